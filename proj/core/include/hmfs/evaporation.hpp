#pragma once

#include <cstddef>
#include <optional>

#include "hmfs/states.hpp"
#include "hmfs/tensor.hpp"

namespace hmfs {

/// P_out,M = (1/N) sum_lm |m>_out U*_lm <l|_M, an out_dim x N matrix whose
/// rows at index >= N are zero.
ComplexMatrix transfer_operator(const BoundaryUnitary& u, std::size_t out_dim);

/// P_out,M |phi>, sub-normalized. Output layout is ("out", out_dim); out_dim
/// of 0 means N.
StateVector evaporate_pure(const StateVector& phi, const BoundaryUnitary& u,
                           std::size_t out_dim = 0);

/// rho_out = P rho_M P^dagger, kept unnormalized.
DensityOperator evaporate_density(const DensityOperator& rho_m, const BoundaryUnitary& u,
                                  std::size_t out_dim = 0);

/// Purity Tr(rho^2).
double mixedness(const DensityOperator& rho);

/// W = P^dagger P (N x N).
ComplexMatrix w_operator(const BoundaryUnitary& u, std::size_t out_dim = 0);

struct MixednessReport {
  double purity_in = 0.0;
  double purity_out = 0.0;  // of the unnormalized rho_out
  /// Purity of rho_out / Tr(rho_out); empty when Tr(rho_out) < 1e-14.
  std::optional<double> purity_out_normalized;
  double trace_out = 0.0;
  double w_norm = 0.0;  // largest eigenvalue of W
  bool contraction_holds = false;  // purity_out <= purity_in
};

MixednessReport mixedness_report(const DensityOperator& rho_m, const BoundaryUnitary& u);

}  // namespace hmfs
