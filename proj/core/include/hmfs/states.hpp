#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "hmfs/rng.hpp"
#include "hmfs/tensor.hpp"

namespace hmfs {

/// The N x N matrix U of the final boundary state.
///
/// Construction enforces (1/N) * sum_jk |U_jk|^2 = 1 within 1e-10. Matrices
/// meeting only that normalization are accepted; `is_unitary()` records
/// whether U^dagger U = I within 1e-10.
class BoundaryUnitary {
 public:
  explicit BoundaryUnitary(ComplexMatrix matrix);

  std::size_t n() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  bool is_unitary() const { return is_unitary_; }
  /// (1/N) * sum_jk |U_jk|^2, equal to 1 within tolerance.
  double normalization() const { return normalization_; }

 private:
  ComplexMatrix matrix_;
  bool is_unitary_ = false;
  double normalization_ = 0.0;
};

inline constexpr double kBoundaryTolerance = 1e-10;

enum class UnitaryEnsemble { haar, identity, permutation, normalized_nonunitary };

std::string_view to_string(UnitaryEnsemble e);
UnitaryEnsemble parse_unitary_ensemble(std::string_view name);

/// (1/sqrt N) sum_l |l>_in |l>_out with the out factor embedded in out_dim levels.
StateVector unruh_vacuum(std::size_t n, std::size_t out_dim,
                         const std::string& in_label = "in", const std::string& out_label = "out");

/// sqrt(2/(N(N+1))) sum_l sqrt(l+1) |l>_in |l+1>_out on (in: n, out: n+1).
StateVector unruh_excited(std::size_t n, const std::string& in_label = "in",
                          const std::string& out_label = "out");

/// <Psi| on (M, in) with coefficient U*_jk / sqrt(N) on <j|_M <k|_in.
Bra final_boundary_bra(const BoundaryUnitary& u, const std::string& in_label = "in");

/// Overwrites `amplitudes` with a Haar-random unit vector of its current size.
void fill_haar_amplitudes(ComplexVector& amplitudes, RngStream& rng);

/// Unit vector from the unitarily invariant measure (normalized complex Gaussian).
StateVector haar_state(std::size_t n, RngStream& rng, const std::string& label = "M");

/// Haar unitary: QR of a complex Ginibre matrix with the R diagonal phases
/// absorbed into Q.
BoundaryUnitary haar_unitary(std::size_t n, RngStream& rng);

BoundaryUnitary identity_boundary(std::size_t n);
/// Cyclic shift |j> -> |j+1 mod n>; traceless for n >= 2.
BoundaryUnitary permutation_boundary(std::size_t n);
/// Complex Gaussian matrix rescaled so that (1/N) sum |U_jk|^2 = 1.
BoundaryUnitary normalized_nonunitary(std::size_t n, RngStream& rng);

BoundaryUnitary draw_boundary(UnitaryEnsemble ensemble, std::size_t n, RngStream& rng);

enum class SpectrumDraw { uniform_simplex, equal_weights };

/// sum_k c_k |v_k><v_k| over the first `rank` columns of a Haar unitary.
DensityOperator random_mixed_state(std::size_t n, std::size_t rank, RngStream& rng,
                                   SpectrumDraw spectrum = SpectrumDraw::uniform_simplex,
                                   const std::string& label = "M");

}  // namespace hmfs
