#include "hmfs/states.hpp"

#include <cmath>
#include <stdexcept>

namespace hmfs {
namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

ComplexMatrix ginibre(std::size_t n, RngStream& rng) {
  ComplexMatrix g(as_index(n), as_index(n));
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = rng.complex_normal();
  }
  return g;
}

}  // namespace

BoundaryUnitary::BoundaryUnitary(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw std::invalid_argument("boundary matrix must be square and non-empty");
  }
  require_finite(matrix_, "boundary matrix");
  normalization_ = matrix_.squaredNorm() / static_cast<double>(matrix_.rows());
  if (std::abs(normalization_ - 1.0) > kBoundaryTolerance) {
    throw std::invalid_argument("boundary matrix violates (1/N) sum |U_jk|^2 = 1 (got " +
                                std::to_string(normalization_) + ")");
  }
  is_unitary_ = hmfs::is_unitary(matrix_, kBoundaryTolerance);
}

std::string_view to_string(UnitaryEnsemble e) {
  switch (e) {
    case UnitaryEnsemble::haar: return "haar";
    case UnitaryEnsemble::identity: return "identity";
    case UnitaryEnsemble::permutation: return "permutation";
    case UnitaryEnsemble::normalized_nonunitary: return "normalized-nonunitary";
  }
  return "?";
}

UnitaryEnsemble parse_unitary_ensemble(std::string_view name) {
  for (auto e : {UnitaryEnsemble::haar, UnitaryEnsemble::identity, UnitaryEnsemble::permutation,
                 UnitaryEnsemble::normalized_nonunitary}) {
    if (to_string(e) == name) return e;
  }
  throw std::invalid_argument("unknown unitary ensemble '" + std::string(name) + "'");
}

StateVector unruh_vacuum(std::size_t n, std::size_t out_dim, const std::string& in_label,
                         const std::string& out_label) {
  require_positive(n, "dimension");
  if (out_dim < n) throw std::invalid_argument("unruh_vacuum: out_dim must be >= n");
  HilbertLayout layout({{in_label, n}, {out_label, out_dim}});
  ComplexVector amp = ComplexVector::Zero(as_index(layout.total_dim()));
  const double c = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t l = 0; l < n; ++l) amp(as_index(l * out_dim + l)) = c;
  return {std::move(layout), std::move(amp), true};
}

StateVector unruh_excited(std::size_t n, const std::string& in_label,
                          const std::string& out_label) {
  require_positive(n, "dimension");
  const std::size_t out_dim = n + 1;
  HilbertLayout layout({{in_label, n}, {out_label, out_dim}});
  ComplexVector amp = ComplexVector::Zero(as_index(layout.total_dim()));
  const double nd = static_cast<double>(n);
  const double pref = std::sqrt(2.0 / (nd * (nd + 1.0)));
  for (std::size_t l = 0; l < n; ++l) {
    amp(as_index(l * out_dim + l + 1)) = pref * std::sqrt(static_cast<double>(l + 1));
  }
  return {std::move(layout), std::move(amp), true};
}

Bra final_boundary_bra(const BoundaryUnitary& u, const std::string& in_label) {
  const std::size_t n = u.n();
  HilbertLayout layout({{"M", n}, {in_label, n}});
  // Ket amplitudes U_jk / sqrt(N), so the bra coefficient is U*_jk / sqrt(N).
  ComplexVector amp(as_index(n * n));
  const double c = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) amp(as_index(j * n + k)) = c * u.matrix()(as_index(j), as_index(k));
  }
  const bool unit = std::abs(amp.norm() - 1.0) <= tol::kNorm;
  return Bra(StateVector(std::move(layout), std::move(amp), unit));
}

void fill_haar_amplitudes(ComplexVector& amplitudes, RngStream& rng) {
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) amplitudes(i) = rng.complex_normal();
  amplitudes /= amplitudes.norm();
}

StateVector haar_state(std::size_t n, RngStream& rng, const std::string& label) {
  require_positive(n, "dimension");
  ComplexVector v(as_index(n));
  fill_haar_amplitudes(v, rng);
  return {HilbertLayout({{label, n}}), std::move(v), true};
}

BoundaryUnitary haar_unitary(std::size_t n, RngStream& rng) {
  require_positive(n, "dimension");
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(n, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    q.col(k) *= mag > 0.0 ? d / mag : Complex{1.0};
  }
  return BoundaryUnitary(std::move(q));
}

BoundaryUnitary identity_boundary(std::size_t n) {
  require_positive(n, "dimension");
  return BoundaryUnitary(ComplexMatrix::Identity(as_index(n), as_index(n)));
}

BoundaryUnitary permutation_boundary(std::size_t n) {
  require_positive(n, "dimension");
  ComplexMatrix p = ComplexMatrix::Zero(as_index(n), as_index(n));
  for (std::size_t j = 0; j < n; ++j) p(as_index((j + 1) % n), as_index(j)) = 1.0;
  return BoundaryUnitary(std::move(p));
}

BoundaryUnitary normalized_nonunitary(std::size_t n, RngStream& rng) {
  require_positive(n, "dimension");
  ComplexMatrix g = ginibre(n, rng);
  g *= std::sqrt(static_cast<double>(n)) / g.norm();
  return BoundaryUnitary(std::move(g));
}

BoundaryUnitary draw_boundary(UnitaryEnsemble ensemble, std::size_t n, RngStream& rng) {
  switch (ensemble) {
    case UnitaryEnsemble::haar: return haar_unitary(n, rng);
    case UnitaryEnsemble::identity: return identity_boundary(n);
    case UnitaryEnsemble::permutation: return permutation_boundary(n);
    case UnitaryEnsemble::normalized_nonunitary: return normalized_nonunitary(n, rng);
  }
  throw std::invalid_argument("unhandled ensemble");
}

DensityOperator random_mixed_state(std::size_t n, std::size_t rank, RngStream& rng,
                                   SpectrumDraw spectrum, const std::string& label) {
  if (rank < 1 || rank > n) throw std::invalid_argument("random_mixed_state: rank must be in [1, n]");

  RealVector weights(as_index(rank));
  if (spectrum == SpectrumDraw::equal_weights) {
    weights.setConstant(1.0 / static_cast<double>(rank));
  } else {
    // Normalized Exp(1) draws are uniform on the simplex.
    for (Eigen::Index k = 0; k < weights.size(); ++k) weights(k) = rng.exponential();
    weights /= weights.sum();
  }

  const ComplexMatrix basis = haar_unitary(n, rng).matrix().leftCols(as_index(rank));
  ComplexMatrix rho = basis * weights.cast<Complex>().asDiagonal() * basis.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator::trusted(HilbertLayout({{label, n}}), std::move(rho));
}

}  // namespace hmfs
