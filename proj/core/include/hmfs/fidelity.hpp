#pragma once

#include <cstddef>

#include "hmfs/rng.hpp"
#include "hmfs/states.hpp"
#include "hmfs/tensor.hpp"

namespace hmfs {

/// Sample mean with its standard error (sample std / sqrt(samples)).
struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;

  /// |mean - expected| in units of the standard error.
  double z_score(double expected) const;
  bool within(double expected, double sigmas) const;
};

/// Welford accumulator producing an MCEstimate.
class MeanAccumulator {
 public:
  void add(double x);
  std::size_t count() const { return count_; }
  MCEstimate estimate() const;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

inline constexpr std::size_t kMinMonteCarloSamples = 1000;

/// Haar integral of <m|phi><phi|l> |phi><phi| in closed form:
/// (delta_lm I + |l><m|) / (N(N+1)).
ComplexMatrix m_operator_analytic(std::size_t l, std::size_t m, std::size_t n);

struct MOperatorEstimate {
  ComplexMatrix mean;
  Eigen::MatrixXd std_error_real;
  Eigen::MatrixXd std_error_imag;
  std::size_t samples = 0;

  MCEstimate real_part(Eigen::Index i, Eigen::Index j) const {
    return {mean(i, j).real(), std_error_real(i, j), samples};
  }
  MCEstimate imag_part(Eigen::Index i, Eigen::Index j) const {
    return {mean(i, j).imag(), std_error_imag(i, j), samples};
  }
};

MOperatorEstimate m_operator_mc(std::size_t l, std::size_t m, std::size_t n, std::size_t samples,
                                RngStream& rng);

/// (1/N^2) [1/(N+1) + |Tr U|^2 / (N(N+1))].
double mean_fidelity_closed(const BoundaryUnitary& u);

/// Haar average of |<phi~|phi>|^2 with phi~ = P phi left unnormalized.
MCEstimate mean_fidelity_mc(const BoundaryUnitary& u, std::size_t samples, RngStream& rng);

/// Haar average of |<phi~|phi>|^2 / <phi~|phi~>, the fidelity conditioned on
/// the projection succeeding. Samples with <phi~|phi~> = 0 contribute 0.
MCEstimate postselected_fidelity_mc(const BoundaryUnitary& u, std::size_t samples, RngStream& rng);

/// [1 + (sum_k lambda_k)^2] / (N+1) over the singular values of U.
double teleportation_fidelity(const BoundaryUnitary& u);

struct FidelityBoundReport {
  double mean_fidelity = 0.0;           // closed form
  double teleportation_fidelity = 0.0;
  double bound = 0.0;                   // teleportation_fidelity / N^2
  bool bound_holds = false;             // mean_fidelity <= bound
  double trace_abs = 0.0;               // |sum_l U_ll|
  double singular_sum = 0.0;            // sum_k lambda_k
  bool trace_bound_holds = false;        // |Tr U| <= N * sum lambda
  bool sharp_trace_bound_holds = false;  // |Tr U| <= sum lambda
};

FidelityBoundReport fidelity_bound_report(const BoundaryUnitary& u);

}  // namespace hmfs
