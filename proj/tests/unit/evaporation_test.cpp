#include "hmfs/evaporation.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace hmfs {
namespace {

using testing::random_density;

// P phi computed the long way: <Psi|_{M,in} (|phi>_M (x) |Phi_0>_{in,out}).
ComplexVector transfer_by_projection(const BoundaryUnitary& u, const StateVector& phi) {
  const std::size_t n = u.n();
  const StateVector vac = unruh_vacuum(n, n);
  const ComplexVector joint = kron(ComplexMatrix(phi.amplitudes()), ComplexMatrix(vac.amplitudes())).col(0);
  const HilbertLayout layout({{"M", n}, {"in", n}, {"out", n}});
  return partial_inner_product(final_boundary_bra(u), StateVector(layout, joint, true)).amplitudes();
}

TEST(TransferOperator, IdentityGivesScaledIdentity) {
  EXPECT_LE((transfer_operator(identity_boundary(2), 2) - ComplexMatrix::Identity(2, 2) / 2.0)
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
}

TEST(TransferOperator, EqualsAdjointOverN) {
  RngStream rng(1, 0);
  for (std::size_t n : {1u, 2u, 3u, 6u}) {
    const BoundaryUnitary u = haar_unitary(n, rng);
    const ComplexMatrix p = transfer_operator(u, n);
    EXPECT_LE((p - u.matrix().adjoint() / double(n)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(TransferOperator, MatchesExplicitProjection) {
  RngStream rng(2, 0);
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    for (auto u : {haar_unitary(n, rng), normalized_nonunitary(n, rng)}) {
      const StateVector phi = haar_state(n, rng);
      const ComplexVector direct = evaporate_pure(phi, u).amplitudes();
      EXPECT_LE((direct - transfer_by_projection(u, phi)).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(TransferOperator, PaddedRowsAreZero) {
  RngStream rng(3, 0);
  const BoundaryUnitary u = haar_unitary(3, rng);
  const ComplexMatrix p = transfer_operator(u, 5);
  EXPECT_EQ(p.rows(), 5);
  EXPECT_EQ(p.bottomRows(2).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(transfer_operator(u, 2), std::invalid_argument);
}

TEST(EvaporatePure, IdentityOnBasisState) {
  const HilbertLayout m({{"M", 2}});
  const std::size_t zero[] = {0};
  const StateVector out = evaporate_pure(StateVector::basis(m, zero), identity_boundary(2));
  EXPECT_FALSE(out.normalized());
  EXPECT_EQ(out.layout(), HilbertLayout({{"out", 2}}));
  EXPECT_NEAR(out.amplitudes()(0).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(out.amplitudes()(1)), 0.0, 1e-15);
}

TEST(EvaporatePure, UnitaryOutputHasNormOneOverNSquared) {
  RngStream rng(4, 0);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      const StateVector out = evaporate_pure(haar_state(n, rng), haar_unitary(n, rng));
      EXPECT_NEAR(out.norm_squared(), 1.0 / double(n * n), 1e-14);
    }
  }
}

TEST(EvaporatePure, RejectsMismatchedInput) {
  RngStream rng(5, 0);
  EXPECT_THROW(evaporate_pure(haar_state(3, rng), identity_boundary(2)), std::invalid_argument);
}

TEST(EvaporateDensity, PureInputStaysRankOne) {
  RngStream rng(6, 0);
  const std::size_t n = 4;
  const StateVector phi = haar_state(n, rng);
  const BoundaryUnitary u = haar_unitary(n, rng);
  const DensityOperator out = evaporate_density(DensityOperator::from_pure(phi), u);
  const ComplexVector v = evaporate_pure(phi, u).amplitudes();
  EXPECT_LE((out.matrix() - v * v.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  const auto e = hermitian_eigenvalues(out.matrix());
  EXPECT_NEAR(e.back(), 1.0 / 16.0, 1e-14);
  for (std::size_t k = 0; k + 1 < e.size(); ++k) EXPECT_NEAR(e[k], 0.0, 1e-14);
}

TEST(EvaporateDensity, MaximallyMixedGoesToIdentityOverNCubed) {
  RngStream rng(7, 0);
  for (std::size_t n : {2u, 3u, 5u}) {
    const auto dim = static_cast<Eigen::Index>(n);
    const DensityOperator rho(HilbertLayout({{"M", n}}), ComplexMatrix::Identity(dim, dim) / double(n));
    const DensityOperator out = evaporate_density(rho, haar_unitary(n, rng));
    const double nd = double(n);
    EXPECT_LE((out.matrix() - ComplexMatrix::Identity(dim, dim) / (nd * nd * nd)).cwiseAbs().maxCoeff(),
              1e-14);
  }
}

TEST(EvaporateDensity, MatchesSpectralDecompositionOracle) {
  RngStream rng(8, 0);
  const std::size_t n = 4;
  const DensityOperator rho(HilbertLayout({{"M", n}}), random_density(4, rng));
  const BoundaryUnitary u = normalized_nonunitary(n, rng);
  const HermitianEigen eig = hermitian_eigen(rho.matrix());
  ComplexMatrix oracle = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    const StateVector vk(HilbertLayout({{"M", n}}), eig.vectors.col(k), true);
    const ComplexVector pk = transfer_by_projection(u, vk);
    oracle += eig.values(k) * pk * pk.adjoint();
  }
  EXPECT_LE((evaporate_density(rho, u).matrix() - oracle).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(EvaporateDensity, IsLinear) {
  RngStream rng(9, 0);
  const HilbertLayout m({{"M", 3}});
  const BoundaryUnitary u = haar_unitary(3, rng);
  const ComplexMatrix a = random_density(3, rng);
  const ComplexMatrix b = random_density(3, rng);
  const double t = 0.3;
  const ComplexMatrix mixed = evaporate_density(DensityOperator(m, t * a + (1 - t) * b), u).matrix();
  const ComplexMatrix split = t * evaporate_density(DensityOperator(m, a), u).matrix() +
                              (1 - t) * evaporate_density(DensityOperator(m, b), u).matrix();
  EXPECT_LE((mixed - split).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Mixedness, KnownValues) {
  const HilbertLayout q({{"A", 2}});
  ComplexMatrix pure = ComplexMatrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  EXPECT_DOUBLE_EQ(mixedness(DensityOperator(q, pure)), 1.0);
  EXPECT_DOUBLE_EQ(mixedness(DensityOperator(q, ComplexMatrix::Identity(2, 2) / 2.0)), 0.5);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.7;
  d(1, 1) = 0.3;
  EXPECT_NEAR(mixedness(DensityOperator(q, d)), 0.58, 1e-15);
}

TEST(WOperator, IdentityAndUnitaryNorm) {
  EXPECT_LE((w_operator(identity_boundary(2)) - ComplexMatrix::Identity(2, 2) / 4.0).cwiseAbs().maxCoeff(),
            1e-15);
  RngStream rng(10, 0);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto e = hermitian_eigenvalues(w_operator(haar_unitary(n, rng)));
    EXPECT_NEAR(e.back(), 1.0 / double(n * n), 1e-14);
    EXPECT_NEAR(e.front(), 1.0 / double(n * n), 1e-14);
  }
}

TEST(WOperator, OutputPurityIsTraceOfWRhoWRho) {
  RngStream rng(11, 0);
  for (std::size_t n : {2u, 4u}) {
    const auto dim = static_cast<int>(n);
    const DensityOperator rho(HilbertLayout({{"M", n}}), random_density(dim, rng));
    const BoundaryUnitary u = normalized_nonunitary(n, rng);
    const ComplexMatrix w = w_operator(u);
    const double identity = (w * rho.matrix() * w * rho.matrix()).trace().real();
    EXPECT_NEAR(mixedness(evaporate_density(rho, u)), identity, 1e-15);
  }
}

TEST(MixednessReport, PureAndMaximallyMixedInputs) {
  RngStream rng(12, 0);
  for (std::size_t n : {2u, 3u, 5u}) {
    const double nd = double(n);
    const BoundaryUnitary u = haar_unitary(n, rng);
    const auto pure = mixedness_report(DensityOperator::from_pure(haar_state(n, rng)), u);
    EXPECT_NEAR(pure.purity_out, 1.0 / std::pow(nd, 4), 1e-14);
    ASSERT_TRUE(pure.purity_out_normalized.has_value());
    EXPECT_NEAR(*pure.purity_out_normalized, 1.0, 1e-12);
    EXPECT_TRUE(pure.contraction_holds);
    EXPECT_NEAR(pure.w_norm, 1.0 / (nd * nd), 1e-14);

    const auto dim = static_cast<Eigen::Index>(n);
    const auto mixed = mixedness_report(
        DensityOperator(HilbertLayout({{"M", n}}), ComplexMatrix::Identity(dim, dim) / nd), u);
    EXPECT_NEAR(mixed.purity_out, 1.0 / std::pow(nd, 5), 1e-15);
    EXPECT_NEAR(mixed.trace_out, 1.0 / (nd * nd), 1e-15);
  }
}

TEST(MixednessReport, ZeroOutputLeavesNormalizedPurityUndefined) {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = std::sqrt(2.0);
  const BoundaryUnitary u(d);
  ComplexMatrix one = ComplexMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  const auto r = mixedness_report(DensityOperator(HilbertLayout({{"M", 2}}), one), u);
  EXPECT_FALSE(r.purity_out_normalized.has_value());
  EXPECT_EQ(r.purity_out, 0.0);
  EXPECT_TRUE(r.contraction_holds);
}

TEST(MixednessReport, ContractionHoldsAcrossEnsembles) {
  RngStream rng(13, 0);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t rank = 1 + trial % n;
    const DensityOperator rho = random_mixed_state(n, rank, rng);
    const BoundaryUnitary u = (trial % 2) ? haar_unitary(n, rng) : normalized_nonunitary(n, rng);
    if (!mixedness_report(rho, u).contraction_holds) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

}  // namespace
}  // namespace hmfs
