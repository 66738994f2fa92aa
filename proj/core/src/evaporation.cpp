#include "hmfs/evaporation.hpp"

#include <stdexcept>

namespace hmfs {
namespace {

constexpr double kTraceFloor = 1e-14;
constexpr double kRelativeSlack = 1e-12;

std::size_t resolve_out_dim(const BoundaryUnitary& u, std::size_t out_dim) {
  if (out_dim == 0) return u.n();
  if (out_dim < u.n()) throw std::invalid_argument("out_dim must be >= N");
  return out_dim;
}

}  // namespace

ComplexMatrix transfer_operator(const BoundaryUnitary& u, std::size_t out_dim) {
  out_dim = resolve_out_dim(u, out_dim);
  const auto n = static_cast<Eigen::Index>(u.n());
  ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(out_dim), n);
  // P(m, l) = U*_lm / N
  p.topRows(n) = u.matrix().adjoint() / static_cast<double>(n);
  return p;
}

StateVector evaporate_pure(const StateVector& phi, const BoundaryUnitary& u, std::size_t out_dim) {
  if (phi.layout().num_factors() != 1 || phi.layout().total_dim() != u.n()) {
    throw std::invalid_argument("evaporate_pure: input must be a single factor of dimension N");
  }
  out_dim = resolve_out_dim(u, out_dim);
  ComplexVector out = transfer_operator(u, out_dim) * phi.amplitudes();
  return {HilbertLayout({{"out", out_dim}}), std::move(out), false};
}

DensityOperator evaporate_density(const DensityOperator& rho_m, const BoundaryUnitary& u,
                                  std::size_t out_dim) {
  if (rho_m.layout().num_factors() != 1 || rho_m.dim() != u.n()) {
    throw std::invalid_argument("evaporate_density: input must be a single factor of dimension N");
  }
  out_dim = resolve_out_dim(u, out_dim);
  const ComplexMatrix p = transfer_operator(u, out_dim);
  ComplexMatrix rho = p * rho_m.matrix() * p.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator::trusted(HilbertLayout({{"out", out_dim}}), std::move(rho));
}

double mixedness(const DensityOperator& rho) {
  // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

ComplexMatrix w_operator(const BoundaryUnitary& u, std::size_t out_dim) {
  const ComplexMatrix p = transfer_operator(u, out_dim);
  return p.adjoint() * p;
}

MixednessReport mixedness_report(const DensityOperator& rho_m, const BoundaryUnitary& u) {
  MixednessReport r;
  const DensityOperator rho_out = evaporate_density(rho_m, u);
  r.purity_in = mixedness(rho_m);
  r.purity_out = mixedness(rho_out);
  r.trace_out = rho_out.trace();
  if (r.trace_out >= kTraceFloor) {
    r.purity_out_normalized = r.purity_out / (r.trace_out * r.trace_out);
  }
  ComplexMatrix w = w_operator(u);
  w = 0.5 * (w + w.adjoint()).eval();
  r.w_norm = hermitian_eigenvalues(w).back();
  r.contraction_holds = r.purity_out <= r.purity_in * (1.0 + kRelativeSlack);
  return r;
}

}  // namespace hmfs
