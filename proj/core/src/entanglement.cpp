#include "hmfs/entanglement.hpp"

#include <cmath>
#include <stdexcept>

namespace hmfs {
namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

ComplexMatrix column(const ComplexVector& v) { return v; }

HilbertLayout alice_bob_layout(std::size_t n) {
  return HilbertLayout({{label::kAliceOut, n + 1}, {label::kBob, 2}});
}

void require_pt_layout(const HilbertLayout& layout) {
  if (layout.num_factors() != 2 || !layout.contains(label::kBob) || layout.dim(label::kBob) != 2) {
    throw std::invalid_argument("expected a two-factor layout with a qubit factor 'B'");
  }
}

}  // namespace

StateVector alice_bob_initial(std::size_t n, const StateVector& phi) {
  if (n == 0) throw std::invalid_argument("dimension must be >= 1");
  if (phi.layout().total_dim() != n || phi.layout().num_factors() != 1) {
    throw std::invalid_argument("alice_bob_initial: phi must be a single factor of dimension n");
  }
  if (!phi.normalized()) throw std::invalid_argument("alice_bob_initial: phi must be normalized");

  const StateVector vacuum = unruh_vacuum(n, n + 1, label::kAliceIn, label::kAliceOut);
  const StateVector excited = unruh_excited(n, label::kAliceIn, label::kAliceOut);
  ComplexVector bob0 = ComplexVector::Zero(2);
  ComplexVector bob1 = ComplexVector::Zero(2);
  bob0(0) = 1.0;
  bob1(1) = 1.0;

  const double s = 1.0 / std::sqrt(2.0);
  const ComplexMatrix alice_bob = s * (kron(column(vacuum.amplitudes()), column(bob1)) +
                                       kron(column(excited.amplitudes()), column(bob0)));
  ComplexVector amp = kron(column(phi.amplitudes()), alice_bob).col(0);

  HilbertLayout layout({{label::kMatter, n},
                        {label::kAliceIn, n},
                        {label::kAliceOut, n + 1},
                        {label::kBob, 2}});
  return {std::move(layout), std::move(amp), true};
}

StateVector evaporate_alice_bob(const StateVector& x, const BoundaryUnitary& u) {
  const auto& layout = x.layout();
  const std::size_t n = u.n();
  if (!(layout == HilbertLayout({{label::kMatter, n},
                                 {label::kAliceIn, n},
                                 {label::kAliceOut, n + 1},
                                 {label::kBob, 2}}))) {
    throw std::invalid_argument("evaporate_alice_bob: state layout does not match U");
  }
  return partial_inner_product(final_boundary_bra(u, label::kAliceIn), x);
}

FCoefficients f_coefficients(const BoundaryUnitary& u, const StateVector& phi) {
  if (phi.layout().total_dim() != u.n()) {
    throw std::invalid_argument("f_coefficients: phi dimension does not match U");
  }
  return FCoefficients(u.matrix().adjoint() * phi.amplitudes() / static_cast<double>(u.n()));
}

StateVector evaporated_state_printed(const FCoefficients& f) {
  const std::size_t n = f.n();
  const double nd = static_cast<double>(n);
  HilbertLayout layout = alice_bob_layout(n);
  ComplexVector amp = ComplexVector::Zero(as_index(layout.total_dim()));
  for (std::size_t m = 0; m < n; ++m) {
    const Complex fm = f.values()(as_index(m));
    amp(as_index(m * 2 + 1)) += fm / std::sqrt(nd);
    amp(as_index((m + 1) * 2 + 0)) += fm * std::sqrt(static_cast<double>(m + 1) / (nd + 1.0));
  }
  return {std::move(layout), std::move(amp), false};
}

BranchComparison compare_printed_state(const StateVector& oracle, const StateVector& printed) {
  if (!(oracle.layout() == printed.layout())) {
    throw std::invalid_argument("compare_printed_state: layouts differ");
  }
  BranchComparison c;
  const auto& o = oracle.amplitudes();
  const auto& p = printed.amplitudes();
  c.max_abs_diff = (o - p).cwiseAbs().maxCoeff();
  double sum[2] = {0.0, 0.0};
  int count[2] = {0, 0};
  for (Eigen::Index i = 0; i < o.size(); ++i) {
    if (std::abs(o(i)) < 1e-300) continue;
    const auto b = static_cast<std::size_t>(i % 2);
    sum[b] += std::abs(p(i) / o(i));
    ++count[b];
  }
  c.ratio_bob_zero = count[0] ? sum[0] / count[0] : std::nan("");
  c.ratio_bob_one = count[1] ? sum[1] / count[1] : std::nan("");
  return c;
}

double entanglement_fidelity_direct(const StateVector& x, const StateVector& psi_ab) {
  const std::vector<std::string> keep{label::kAliceOut, label::kBob};
  const DensityOperator sigma = reduced_state(x, keep);
  if (!(sigma.layout() == psi_ab.layout())) {
    throw std::invalid_argument("entanglement_fidelity_direct: layouts incompatible after tracing");
  }
  const auto& v = psi_ab.amplitudes();
  return v.dot(sigma.matrix() * v).real();
}

double entanglement_fidelity_printed(const FCoefficients& f) {
  const double nd = static_cast<double>(f.n());
  double total = 0.0;
  for (std::size_t m = 0; m < f.n(); ++m) {
    const double k = static_cast<double>(m + 1);
    total += f.abs2(static_cast<long>(m)) *
             (k * k + k / (nd + 1.0) + 1.0 / (4.0 * (nd + 1.0) * (nd + 1.0)));
  }
  return total / (nd * (nd + 1.0) * (nd + 1.0));
}

DensityOperator rho_ab(const StateVector& psi_ab) { return DensityOperator::from_pure(psi_ab); }

ComplexMatrix block_matrix_printed(const FCoefficients& f, std::size_t m) {
  if (m >= f.n()) throw std::out_of_range("block index out of range");
  const double nd = static_cast<double>(f.n());
  const double md = static_cast<double>(m);
  const long mi = static_cast<long>(m);
  const double fm = f.abs2(mi);

  ComplexMatrix b = ComplexMatrix::Zero(4, 4);
  b(0, 0) = md * f.abs2(mi - 1) / (nd + 1.0);
  b(1, 1) = fm / 2.0;
  b(1, 2) = std::sqrt((md + 1.0) / (2.0 * (nd + 1.0))) * fm;
  b(2, 1) = b(1, 2);
  b(2, 2) = (md + 1.0) * fm / (nd + 1.0);
  b(3, 3) = f.abs2(mi + 1) / 2.0;
  return b;
}

std::array<double, 4> pt_block_eigs_printed(const FCoefficients& f, std::size_t m) {
  if (m >= f.n()) throw std::out_of_range("block index out of range");
  const double nd = static_cast<double>(f.n());
  const double md = static_cast<double>(m);
  const long mi = static_cast<long>(m);
  const double fm = f.abs2(mi);
  const double upper = f.abs2(mi + 1) / 2.0;
  const double lower = md * f.abs2(mi - 1) / (nd + 1.0);
  const double disc = std::sqrt((upper - lower) * (upper - lower) +
                                2.0 * (md + 1.0) * fm * fm / (nd + 1.0));
  return {fm / 2.0, (md + 1.0) * fm / (nd + 1.0), 0.5 * (upper + lower + disc),
          0.5 * (upper + lower - disc)};
}

double printed_block_trace_sum(const FCoefficients& f) {
  double total = 0.0;
  for (std::size_t m = 0; m < f.n(); ++m) total += block_matrix_printed(f, m).trace().real();
  return total;
}

std::vector<double> pt_spectrum_full(const DensityOperator& rho) {
  require_pt_layout(rho.layout());
  return hermitian_eigenvalues(partial_transpose(rho, label::kBob));
}

double negativity(const DensityOperator& rho) {
  double total = 0.0;
  for (double e : pt_spectrum_full(rho)) {
    if (e < 0.0) total -= e;
  }
  return total;
}

bool survival_condition(const FCoefficients& f, std::size_t m) {
  if (m >= f.n()) throw std::out_of_range("survival_condition: index out of range");
  const long mi = static_cast<long>(m);
  const double md = static_cast<double>(m);
  return f.abs2(mi) >= std::sqrt(md / (md + 1.0)) * std::abs(f.at(mi - 1) * f.at(mi + 1));
}

bool survival_condition_all(const FCoefficients& f) {
  for (std::size_t m = 0; m < f.n(); ++m) {
    if (!survival_condition(f, m)) return false;
  }
  return true;
}

}  // namespace hmfs
