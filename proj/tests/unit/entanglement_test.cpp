#include "hmfs/entanglement.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace hmfs {
namespace {

using testing::derived_alice_bob_state;
using testing::derived_entanglement_fidelity;

FCoefficients random_f(std::size_t n, RngStream& rng) {
  return FCoefficients(testing::random_matrix(static_cast<int>(n), 1, rng).col(0));
}

struct PipelineRun {
  BoundaryUnitary u;
  StateVector phi;
  StateVector x;
  StateVector psi;
  FCoefficients f;
};

PipelineRun make_run(std::size_t n, RngStream& rng) {
  BoundaryUnitary u = haar_unitary(n, rng);
  StateVector phi = haar_state(n, rng);
  StateVector x = alice_bob_initial(n, phi);
  StateVector psi = evaporate_alice_bob(x, u);
  FCoefficients f = f_coefficients(u, phi);
  return {std::move(u), std::move(phi), std::move(x), std::move(psi), std::move(f)};
}

TEST(AliceBobInitial, AmplitudesAndNorm) {
  RngStream rng(1, 0);
  for (std::size_t n : {1u, 2u, 4u}) {
    const StateVector phi = haar_state(n, rng);
    const StateVector x = alice_bob_initial(n, phi);
    EXPECT_NEAR(x.norm_squared(), 1.0, 1e-13);
    const double nd = double(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        const std::size_t vac[] = {j, l, l, 1};
        const std::size_t exc[] = {j, l, l + 1, 0};
        const Complex pj = phi.amplitudes()(static_cast<Eigen::Index>(j));
        EXPECT_NEAR(std::abs(x.amplitude(vac) - pj / std::sqrt(2.0 * nd)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(x.amplitude(exc) - pj * std::sqrt((l + 1) / (nd * (nd + 1)))), 0.0, 1e-15);
      }
    }
  }
}

TEST(AliceBobInitial, RejectsBadInput) {
  RngStream rng(2, 0);
  EXPECT_THROW(alice_bob_initial(3, haar_state(2, rng)), std::invalid_argument);
  ComplexVector v = ComplexVector::Ones(2);
  EXPECT_THROW(alice_bob_initial(2, StateVector(HilbertLayout({{"M", 2}}), v, false)),
               std::invalid_argument);
  const StateVector x = alice_bob_initial(2, haar_state(2, rng));
  EXPECT_THROW(evaporate_alice_bob(x, identity_boundary(3)), std::invalid_argument);
}

TEST(EvaporateAliceBob, SingleLevelByHand) {
  // N = 1, U = e^{i t}, phi = |0>: f_0 = e^{-i t} and the output is
  // f_0 (|0>|1> + |1>|0>) / sqrt2.
  const Complex phase = std::polar(1.0, 0.4);
  ComplexMatrix m(1, 1);
  m(0, 0) = phase;
  const BoundaryUnitary u(m);
  const std::size_t zero[] = {0};
  const StateVector phi = StateVector::basis(HilbertLayout({{"M", 1}}), zero);
  const StateVector psi = evaporate_alice_bob(alice_bob_initial(1, phi), u);
  EXPECT_EQ(psi.layout(), HilbertLayout({{"A_out", 2}, {"B", 2}}));
  const Complex f0 = std::conj(phase);
  const double s = 1.0 / std::sqrt(2.0);
  const Complex expected[] = {0.0, f0 * s, f0 * s, 0.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(psi.amplitudes()(i) - expected[i]), 0.0, 1e-15);
}

TEST(EvaporateAliceBob, MatchesDerivedClosedForm) {
  RngStream rng(3, 0);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const PipelineRun r = make_run(n, rng);
      const ComplexVector oracle = derived_alice_bob_state(r.f.values());
      EXPECT_LE((r.psi.amplitudes() - oracle).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(EvaporateAliceBob, PrintedFormDiffersOnlyOnBobOneBranch) {
  RngStream rng(4, 0);
  for (std::size_t n = 2; n <= 6; ++n) {
    const PipelineRun r = make_run(n, rng);
    const BranchComparison c = compare_printed_state(r.psi, evaporated_state_printed(r.f));
    EXPECT_NEAR(c.ratio_bob_one, std::sqrt(2.0 / double(n)), 1e-12);
    EXPECT_NEAR(c.ratio_bob_zero, 1.0, 1e-12);
    if (n == 2) {
      EXPECT_LE(c.max_abs_diff, 1e-12);
    } else {
      EXPECT_GT(c.max_abs_diff, 1e-6);
    }
  }
}

TEST(FCoefficients, KnownValuesAndNorm) {
  const std::size_t zero[] = {0};
  const StateVector phi = StateVector::basis(HilbertLayout({{"M", 3}}), zero);
  const FCoefficients f = f_coefficients(identity_boundary(3), phi);
  EXPECT_NEAR(std::abs(f.at(0) - 1.0 / 3.0), 0.0, 1e-15);
  EXPECT_EQ(f.at(1), Complex{});
  EXPECT_EQ(f.at(-1), Complex{});
  EXPECT_EQ(f.at(3), Complex{});

  RngStream rng(5, 0);
  for (std::size_t n = 1; n <= 8; ++n) {
    const PipelineRun r = make_run(n, rng);
    EXPECT_NEAR(r.f.sum_abs2(), 1.0 / double(n * n), 1e-14);
  }
}

TEST(EntanglementFidelity, DirectMatchesDerivedClosedForm) {
  RngStream rng(6, 0);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const PipelineRun r = make_run(n, rng);
      const double direct = entanglement_fidelity_direct(r.x, r.psi);
      EXPECT_GE(direct, 0.0);
      EXPECT_NEAR(direct, derived_entanglement_fidelity(r.f.values()), 1e-14);
    }
  }
}

TEST(EntanglementFidelity, SingleLevelValues) {
  RngStream rng(7, 0);
  const PipelineRun r = make_run(1, rng);
  EXPECT_NEAR(r.f.abs2(0), 1.0, 1e-14);
  EXPECT_NEAR(entanglement_fidelity_direct(r.x, r.psi), 1.0, 1e-14);
  // (1 + 1/2 + 1/16) / 4
  EXPECT_NEAR(entanglement_fidelity_printed(r.f), 25.0 / 64.0, 1e-14);
}

TEST(EntanglementFidelity, PrintedBracketIsPerfectSquare) {
  RngStream rng(8, 0);
  for (std::size_t n = 1; n <= 8; ++n) {
    const FCoefficients f = random_f(n, rng);
    const double nd = double(n);
    double oracle = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double k = double(m + 1) + 1.0 / (2.0 * (nd + 1.0));
      oracle += f.abs2(long(m)) * k * k;
    }
    oracle /= nd * (nd + 1) * (nd + 1);
    EXPECT_NEAR(entanglement_fidelity_printed(f), oracle, 1e-14);
  }
}

TEST(RhoAB, IsRankOneWithTraceEqualToNorm) {
  RngStream rng(9, 0);
  const PipelineRun r = make_run(4, rng);
  const DensityOperator rho = rho_ab(r.psi);
  EXPECT_NEAR(rho.trace(), r.psi.norm_squared(), 1e-15);
  EXPECT_TRUE(rho.subnormalized());
  const auto e = hermitian_eigenvalues(rho.matrix());
  EXPECT_NEAR(e.back(), r.psi.norm_squared(), 1e-14);
  for (std::size_t k = 0; k + 1 < e.size(); ++k) EXPECT_NEAR(e[k], 0.0, 1e-14);
}

TEST(PrintedBlock, EntriesAndBoundaries) {
  ComplexVector v(3);
  v << 1.0, 2.0, 3.0;
  const FCoefficients f(v);
  const ComplexMatrix b0 = block_matrix_printed(f, 0);
  EXPECT_EQ(b0(0, 0), Complex{});  // m = 0 has no lower neighbour
  EXPECT_NEAR(b0(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(b0(2, 2).real(), 0.25, 1e-15);
  EXPECT_NEAR(b0(1, 2).real(), std::sqrt(1.0 / 8.0), 1e-15);
  EXPECT_NEAR(b0(3, 3).real(), 2.0, 1e-15);
  const ComplexMatrix b2 = block_matrix_printed(f, 2);
  EXPECT_EQ(b2(3, 3), Complex{});  // f_N = 0
  EXPECT_NEAR(b2(0, 0).real(), 2.0 * 4.0 / 4.0, 1e-15);
  EXPECT_THROW(block_matrix_printed(f, 3), std::out_of_range);
  EXPECT_THROW(pt_block_eigs_printed(f, 3), std::out_of_range);
}

TEST(PrintedBlock, ClosedFormEigenvaluesMatchSolver) {
  RngStream rng(10, 0);
  const HilbertLayout block({{"L", 2}, {"B", 2}});
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rep % 8;
    const FCoefficients f = random_f(n, rng);
    for (std::size_t m = 0; m < n; ++m) {
      auto closed = pt_block_eigs_printed(f, m);
      std::sort(closed.begin(), closed.end());
      const auto solver = hermitian_eigenvalues(partial_transpose(block_matrix_printed(f, m), block, "B"));
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(closed[k], solver[k], 1e-12);
    }
  }
}

TEST(PrintedBlock, NegativeRootSignFollowsSurvivalInequality) {
  RngStream rng(11, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 6;
    const FCoefficients f = random_f(n, rng);
    for (std::size_t m = 0; m < n; ++m) {
      const long mi = long(m);
      const double lhs = double(m + 1) * f.abs2(mi) * f.abs2(mi);
      const double rhs = double(m) * f.abs2(mi - 1) * f.abs2(mi + 1);
      if (std::abs(lhs - rhs) < 1e-9 * (lhs + rhs)) continue;
      EXPECT_EQ(pt_block_eigs_printed(f, m)[3] < 0.0, lhs > rhs);
      EXPECT_EQ(survival_condition(f, m), lhs > rhs);
    }
  }
}

TEST(PtSpectrum, ProductStateIsPositive) {
  RngStream rng(12, 0);
  const ComplexVector a = testing::random_matrix(3, 1, rng).col(0).normalized();
  const ComplexVector b = testing::random_matrix(2, 1, rng).col(0).normalized();
  const StateVector psi(HilbertLayout({{"A_out", 3}, {"B", 2}}), kron(a, b).col(0), true);
  const DensityOperator rho = rho_ab(psi);
  for (double e : pt_spectrum_full(rho)) EXPECT_GE(e, -1e-14);
  EXPECT_NEAR(negativity(rho), 0.0, 1e-14);
}

TEST(PtSpectrum, ScaledBellState) {
  for (double c : {1.0, 0.5, 0.1}) {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = v(3) = c / std::sqrt(2.0);
    const DensityOperator rho = rho_ab(StateVector(HilbertLayout({{"A_out", 2}, {"B", 2}}), v, false));
    const auto e = pt_spectrum_full(rho);
    EXPECT_NEAR(e.front(), -c * c / 2.0, 1e-14);
    EXPECT_NEAR(negativity(rho), c * c / 2.0, 1e-14);
  }
}

TEST(PtSpectrum, RejectsWrongLayout) {
  const DensityOperator rho(HilbertLayout({{"A_out", 2}, {"C", 2}}), ComplexMatrix::Identity(4, 4) / 4.0);
  EXPECT_THROW(pt_spectrum_full(rho), std::invalid_argument);
  const DensityOperator q(HilbertLayout({{"A_out", 2}, {"B", 3}}), ComplexMatrix::Identity(6, 6) / 6.0);
  EXPECT_THROW(pt_spectrum_full(q), std::invalid_argument);
}

TEST(Survival, EdgeCases) {
  ComplexVector v(3);
  v << 0.0, 1.0, 0.0;
  const FCoefficients f(v);
  EXPECT_TRUE(survival_condition(f, 0));  // no lower neighbour, 0 >= 0
  EXPECT_TRUE(survival_condition_all(FCoefficients(ComplexVector::Constant(5, Complex(0.2, 0.1)))));
  ComplexVector dip(3);
  dip << 1.0, 0.1, 1.0;
  EXPECT_FALSE(survival_condition(FCoefficients(dip), 1));
  EXPECT_FALSE(survival_condition_all(FCoefficients(dip)));
  EXPECT_THROW(survival_condition(f, 3), std::out_of_range);
}

TEST(Survival, ImpliesNegativePartialTranspose) {
  RngStream rng(13, 0);
  int surviving = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 2 + rep % 5;
    const PipelineRun r = make_run(n, rng);
    if (!survival_condition_all(r.f)) continue;
    ++surviving;
    EXPECT_LT(pt_spectrum_full(rho_ab(r.psi)).front(), kNegativeEigenvalueThreshold);
  }
  EXPECT_GT(surviving, 0);
}

TEST(PrintedBlockTraceSum, ExceedsTraceByDoubleCountedNeighbours) {
  RngStream rng(14, 0);
  for (std::size_t n = 1; n <= 8; ++n) {
    const PipelineRun r = make_run(n, rng);
    const double nd = double(n);
    double extra = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) extra += double(k + 1) * r.f.abs2(long(k)) / (nd + 1);
    for (std::size_t k = 1; k < n; ++k) extra += r.f.abs2(long(k)) / 2.0;
    EXPECT_NEAR(printed_block_trace_sum(r.f), rho_ab(r.psi).trace() + extra, 1e-15);
  }
}

}  // namespace
}  // namespace hmfs
