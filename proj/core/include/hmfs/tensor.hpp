#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hmfs/layout.hpp"

namespace hmfs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kNorm = 1e-12;       // unit-norm and trace checks
inline constexpr double kHermitian = 1e-12;  // Hermiticity at construction
inline constexpr double kSpectral = 1e-10;   // eigenvalue sign and eigensolver input
}  // namespace tol

/// Throws std::invalid_argument if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

bool is_hermitian(const ComplexMatrix& m, double tolerance);
bool is_unitary(const ComplexMatrix& m, double tolerance);

/// Ket over a labeled tensor factorization.
///
/// `normalized()` records whether the vector is promised to be a unit vector;
/// results of projections (partial inner products, evaporation) are
/// deliberately sub-normalized and carry `normalized() == false`.
class StateVector {
 public:
  StateVector(HilbertLayout layout, ComplexVector amplitudes, bool normalized);

  /// Computational basis ket |multi> in `layout`.
  static StateVector basis(HilbertLayout layout, std::span<const std::size_t> multi);

  const HilbertLayout& layout() const { return layout_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  bool normalized() const { return normalized_; }

  Complex amplitude(std::span<const std::size_t> multi) const {
    return amplitudes_(static_cast<Eigen::Index>(layout_.flatten(multi)));
  }
  double norm_squared() const { return amplitudes_.squaredNorm(); }

  /// Unit-norm copy; throws std::domain_error for the zero vector.
  StateVector unit() const;

 private:
  HilbertLayout layout_;
  ComplexVector amplitudes_;
  bool normalized_;
};

/// Dual vector <v|. Stores the ket |v>; coefficients are its conjugates.
class Bra {
 public:
  explicit Bra(StateVector ket) : ket_(std::move(ket)) {}

  const StateVector& ket() const { return ket_; }
  const HilbertLayout& layout() const { return ket_.layout(); }
  Complex coefficient(std::size_t flat) const {
    return std::conj(ket_.amplitudes()(static_cast<Eigen::Index>(flat)));
  }

 private:
  StateVector ket_;
};

/// Hermitian positive-semidefinite operator with 0 <= trace <= 1.
class DensityOperator {
 public:
  /// Validates shape, finiteness, Hermiticity, trace and spectrum.
  DensityOperator(HilbertLayout layout, ComplexMatrix matrix);

  /// |psi><psi|; no eigensolve since positivity is structural.
  static DensityOperator from_pure(const StateVector& psi);

  /// For operators that are PSD by construction (congruences and partial
  /// traces of valid operators). Skips the eigensolve, keeps the other checks.
  static DensityOperator trusted(HilbertLayout layout, ComplexMatrix matrix);

  const HilbertLayout& layout() const { return layout_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  double trace() const { return trace_; }
  std::size_t dim() const { return layout_.total_dim(); }
  bool subnormalized() const { return trace_ < 1.0 - tol::kNorm; }

 private:
  struct SkipSpectrum {};
  DensityOperator(HilbertLayout layout, ComplexMatrix matrix, SkipSpectrum);

  HilbertLayout layout_;
  ComplexMatrix matrix_;
  double trace_ = 0.0;
};

/// Kronecker product; entry (i*rb + k, j*cb + l) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> keep);

/// Reduced density operator of a pure state on `keep`, without forming |psi><psi|.
DensityOperator reduced_state(const StateVector& psi, std::span<const std::string> keep);

/// Transpose of the named factor's indices; the result is Hermitian but may
/// have negative eigenvalues, so it is returned as a plain matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const HilbertLayout& layout,
                                const std::string& factor);
ComplexMatrix partial_transpose(const DensityOperator& rho, const std::string& factor);

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};

HermitianEigen hermitian_eigen(const ComplexMatrix& h);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// m = V * diag(singular_values) * W, singular values descending.
struct Svd {
  ComplexMatrix v;
  RealVector singular_values;
  ComplexMatrix w;
};

Svd svd(const ComplexMatrix& m);

/// <bra| applied to the bra's factors of `ket`; the result lives on the
/// remaining factors and is flagged as not normalized.
StateVector partial_inner_product(const Bra& bra, const StateVector& ket);

}  // namespace hmfs
