#include "hmfs/fidelity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hmfs/evaporation.hpp"

namespace hmfs {
namespace {

// Zero-variance estimators (e.g. N = 1, where every entry is constant) are
// compared with this absolute floor instead of a zero-width band.
constexpr double kDegenerateFloor = 1e-12;
constexpr double kRelativeSlack = 1e-12;

void require_samples(std::size_t samples) {
  if (samples < kMinMonteCarloSamples) {
    throw std::invalid_argument("Monte Carlo needs at least " +
                                std::to_string(kMinMonteCarloSamples) + " samples");
  }
}

bool leq(double lhs, double rhs) { return lhs <= rhs + kRelativeSlack * std::abs(rhs); }

}  // namespace

double MCEstimate::z_score(double expected) const {
  const double diff = std::abs(mean - expected);
  if (diff <= kDegenerateFloor) return 0.0;
  return std_error > 0.0 ? diff / std_error : std::numeric_limits<double>::infinity();
}

bool MCEstimate::within(double expected, double sigmas) const {
  return std::abs(mean - expected) <= sigmas * std_error + kDegenerateFloor;
}

void MeanAccumulator::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

MCEstimate MeanAccumulator::estimate() const {
  if (count_ < 2) throw std::logic_error("MCEstimate needs at least 2 samples");
  const double n = static_cast<double>(count_);
  const double variance = m2_ / (n - 1.0);
  return {mean_, std::sqrt(variance / n), count_};
}

ComplexMatrix m_operator_analytic(std::size_t l, std::size_t m, std::size_t n) {
  if (l >= n || m >= n) throw std::out_of_range("m_operator_analytic: index out of range");
  const double nd = static_cast<double>(n);
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  if (l == m) out.diagonal().setOnes();
  out(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)) += 1.0;
  return out / (nd * (nd + 1.0));
}

MOperatorEstimate m_operator_mc(std::size_t l, std::size_t m, std::size_t n, std::size_t samples,
                                RngStream& rng) {
  if (l >= n || m >= n) throw std::out_of_range("m_operator_mc: index out of range");
  require_samples(samples);
  const auto dim = static_cast<Eigen::Index>(n);
  std::vector<MeanAccumulator> re(n * n);
  std::vector<MeanAccumulator> im(n * n);
  ComplexVector phi(dim);
  for (std::size_t s = 0; s < samples; ++s) {
    fill_haar_amplitudes(phi, rng);
    // <m|phi><phi|l>
    const Complex weight = phi(static_cast<Eigen::Index>(m)) * std::conj(phi(static_cast<Eigen::Index>(l)));
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex v = weight * phi(i) * std::conj(phi(j));
        const auto k = static_cast<std::size_t>(i * dim + j);
        re[k].add(v.real());
        im[k].add(v.imag());
      }
    }
  }
  MOperatorEstimate out{ComplexMatrix(dim, dim), Eigen::MatrixXd(dim, dim),
                        Eigen::MatrixXd(dim, dim), samples};
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto k = static_cast<std::size_t>(i * dim + j);
      const MCEstimate r = re[k].estimate();
      const MCEstimate c = im[k].estimate();
      out.mean(i, j) = {r.mean, c.mean};
      out.std_error_real(i, j) = r.std_error;
      out.std_error_imag(i, j) = c.std_error;
    }
  }
  return out;
}

double mean_fidelity_closed(const BoundaryUnitary& u) {
  const double n = static_cast<double>(u.n());
  const double tr2 = std::norm(u.matrix().trace());
  return (1.0 / (n * n)) * (1.0 / (n + 1.0) + tr2 / (n * (n + 1.0)));
}

MCEstimate mean_fidelity_mc(const BoundaryUnitary& u, std::size_t samples, RngStream& rng) {
  require_samples(samples);
  const ComplexMatrix p = transfer_operator(u, u.n());
  ComplexVector phi(static_cast<Eigen::Index>(u.n()));
  MeanAccumulator acc;
  for (std::size_t s = 0; s < samples; ++s) {
    fill_haar_amplitudes(phi, rng);
    const ComplexVector evaporated = p * phi;
    acc.add(std::norm(evaporated.dot(phi)));
  }
  return acc.estimate();
}

MCEstimate postselected_fidelity_mc(const BoundaryUnitary& u, std::size_t samples, RngStream& rng) {
  require_samples(samples);
  const ComplexMatrix p = transfer_operator(u, u.n());
  ComplexVector phi(static_cast<Eigen::Index>(u.n()));
  MeanAccumulator acc;
  for (std::size_t s = 0; s < samples; ++s) {
    fill_haar_amplitudes(phi, rng);
    const ComplexVector evaporated = p * phi;
    const double prob = evaporated.squaredNorm();
    acc.add(prob > 0.0 ? std::norm(evaporated.dot(phi)) / prob : 0.0);
  }
  return acc.estimate();
}

double teleportation_fidelity(const BoundaryUnitary& u) {
  const double n = static_cast<double>(u.n());
  const double s = svd(u.matrix()).singular_values.sum();
  return (1.0 + s * s) / (n + 1.0);
}

FidelityBoundReport fidelity_bound_report(const BoundaryUnitary& u) {
  FidelityBoundReport r;
  const double n = static_cast<double>(u.n());
  r.mean_fidelity = mean_fidelity_closed(u);
  r.teleportation_fidelity = teleportation_fidelity(u);
  r.bound = r.teleportation_fidelity / (n * n);
  r.bound_holds = leq(r.mean_fidelity, r.bound);
  r.trace_abs = std::abs(u.matrix().trace());
  r.singular_sum = svd(u.matrix()).singular_values.sum();
  r.trace_bound_holds = leq(r.trace_abs, n * r.singular_sum);
  r.sharp_trace_bound_holds = leq(r.trace_abs, r.singular_sum);
  return r;
}

}  // namespace hmfs
