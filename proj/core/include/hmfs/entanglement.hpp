#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hmfs/states.hpp"
#include "hmfs/tensor.hpp"

namespace hmfs {

/// f_m = (1/N) sum_l U*_lm <l|phi>, with f_{-1} = f_N = 0 outside the range.
class FCoefficients {
 public:
  explicit FCoefficients(ComplexVector values) : values_(std::move(values)) {}

  std::size_t n() const { return static_cast<std::size_t>(values_.size()); }
  const ComplexVector& values() const { return values_; }
  Complex at(long m) const {
    return (m < 0 || m >= static_cast<long>(n())) ? Complex{} : values_(m);
  }
  double abs2(long m) const { return std::norm(at(m)); }
  double sum_abs2() const { return values_.squaredNorm(); }

 private:
  ComplexVector values_;
};

/// Layout labels of the Alice-Bob pipeline.
namespace label {
inline const std::string kMatter = "M";
inline const std::string kAliceIn = "A_in";
inline const std::string kAliceOut = "A_out";
inline const std::string kBob = "B";
}  // namespace label

/// (1/sqrt2)(|Phi_A;0> |1>_B + |Phi_A;1> |0>_B) (x) |phi>_M on
/// (M: n, A_in: n, A_out: n+1, B: 2).
StateVector alice_bob_initial(std::size_t n, const StateVector& phi);

/// <Psi|_{M, A_in} |X>, computed by partial inner product. Lives on (A_out, B).
StateVector evaporate_alice_bob(const StateVector& x, const BoundaryUnitary& u);

FCoefficients f_coefficients(const BoundaryUnitary& u, const StateVector& phi);

/// The closed form as printed:
/// sum_m f_m [ (1/sqrt N) |m>|1> + sqrt((m+1)/(N+1)) |m+1>|0> ].
StateVector evaporated_state_printed(const FCoefficients& f);

/// Printed-vs-oracle comparison of the evaporated Alice-Bob state.
struct BranchComparison {
  double max_abs_diff = 0.0;
  /// Mean |printed / oracle| on the |m>|1>_B and |m+1>|0>_B branches, over
  /// entries where the oracle amplitude is nonzero.
  double ratio_bob_one = 0.0;
  double ratio_bob_zero = 0.0;
};

BranchComparison compare_printed_state(const StateVector& oracle, const StateVector& printed);

/// Tr[ |psi><psi| Tr_{M, A_in}(|X><X|) ] with |psi> left unnormalized.
double entanglement_fidelity_direct(const StateVector& x, const StateVector& psi_ab);

/// (1/(N(N+1)^2)) sum_m |f_m|^2 [(m+1)^2 + (m+1)/(N+1) + 1/(4(N+1)^2)],
/// reading the bracket's free index as the summation index m.
double entanglement_fidelity_printed(const FCoefficients& f);

DensityOperator rho_ab(const StateVector& psi_ab);

/// The printed 4x4 block in the basis [|m0>, |m1>, |(m+1)0>, |(m+1)1>].
ComplexMatrix block_matrix_printed(const FCoefficients& f, std::size_t m);

/// Closed-form partial-transpose eigenvalues of the printed block, in the
/// order: |f_m|^2/2, (m+1)|f_m|^2/(N+1), then the + and - roots.
std::array<double, 4> pt_block_eigs_printed(const FCoefficients& f, std::size_t m);

/// Sum over m of the printed blocks' traces. Blocks overlap on shared basis
/// vectors, so this differs from Tr(rho_AB) in general.
double printed_block_trace_sum(const FCoefficients& f);

/// Spectrum of the partial transpose over B, ascending.
std::vector<double> pt_spectrum_full(const DensityOperator& rho);

/// Sum of |negative eigenvalues| of the partial transpose over B.
double negativity(const DensityOperator& rho);

inline constexpr double kNegativeEigenvalueThreshold = -1e-10;

/// |f_m|^2 >= sqrt(m/(m+1)) |f_{m-1} f_{m+1}|.
bool survival_condition(const FCoefficients& f, std::size_t m);
bool survival_condition_all(const FCoefficients& f);

}  // namespace hmfs
