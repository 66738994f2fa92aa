#include "hmfs/tensor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hmfs {
namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

// For every flat index of `layout`, its flat index within the kept sub-layout
// and within the traced sub-layout.
struct Split {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
};

Split split_indices(const HilbertLayout& layout, std::span<const std::string> keep) {
  const HilbertLayout kept = layout.subset(keep);
  const HilbertLayout traced = layout.complement(keep);
  std::vector<bool> is_kept(layout.num_factors(), false);
  for (const auto& name : keep) is_kept[layout.position(name)] = true;

  Split s;
  s.kept_dim = kept.total_dim();
  s.traced_dim = traced.total_dim();
  s.kept.resize(layout.total_dim());
  s.traced.resize(layout.total_dim());
  for (std::size_t flat = 0; flat < layout.total_dim(); ++flat) {
    const auto multi = layout.unflatten(flat);
    std::size_t k = 0;
    std::size_t t = 0;
    for (std::size_t f = 0; f < multi.size(); ++f) {
      const std::size_t d = layout.factors()[f].dim;
      if (is_kept[f]) {
        k = k * d + multi[f];
      } else {
        t = t * d + multi[f];
      }
    }
    s.kept[flat] = k;
    s.traced[flat] = t;
  }
  return s;
}

double real_trace(const ComplexMatrix& m) { return m.trace().real(); }

void check_density(const HilbertLayout& layout, const ComplexMatrix& m) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != layout.total_dim()) {
    throw std::invalid_argument("density matrix shape does not match layout");
  }
  require_finite(m, "density matrix");
  if (!is_hermitian(m, tol::kHermitian)) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  const double tr = real_trace(m);
  if (tr < -tol::kNorm || tr > 1.0 + tol::kNorm) {
    throw std::invalid_argument("density matrix trace outside [0, 1]: " + std::to_string(tr));
  }
}

}  // namespace

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + " has non-finite entries");
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

bool is_unitary(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tolerance;
}

// --- StateVector -------------------------------------------------------------

StateVector::StateVector(HilbertLayout layout, ComplexVector amplitudes, bool normalized)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)), normalized_(normalized) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
    throw std::invalid_argument("amplitude count does not match layout dimension");
  }
  if (!amplitudes_.allFinite()) throw std::invalid_argument("state has non-finite amplitudes");
  if (normalized_ && std::abs(amplitudes_.norm() - 1.0) > tol::kNorm) {
    throw std::invalid_argument("state flagged normalized but has norm " +
                                std::to_string(amplitudes_.norm()));
  }
}

StateVector StateVector::basis(HilbertLayout layout, std::span<const std::size_t> multi) {
  ComplexVector v = ComplexVector::Zero(as_index(layout.total_dim()));
  v(as_index(layout.flatten(multi))) = 1.0;
  return {std::move(layout), std::move(v), true};
}

StateVector StateVector::unit() const {
  const double n = amplitudes_.norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  return {layout_, amplitudes_ / n, true};
}

// --- DensityOperator ---------------------------------------------------------

DensityOperator::DensityOperator(HilbertLayout layout, ComplexMatrix matrix)
    : DensityOperator(std::move(layout), std::move(matrix), SkipSpectrum{}) {
  const auto eigs = hermitian_eigenvalues(matrix_);
  if (!eigs.empty() && eigs.front() < -tol::kSpectral) {
    throw std::invalid_argument("density matrix has negative eigenvalue " +
                                std::to_string(eigs.front()));
  }
}

DensityOperator::DensityOperator(HilbertLayout layout, ComplexMatrix matrix, SkipSpectrum)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  check_density(layout_, matrix_);
  trace_ = real_trace(matrix_);
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
  const auto& a = psi.amplitudes();
  return {psi.layout(), a * a.adjoint(), SkipSpectrum{}};
}

DensityOperator DensityOperator::trusted(HilbertLayout layout, ComplexMatrix matrix) {
  return {std::move(layout), std::move(matrix), SkipSpectrum{}};
}

// --- operations --------------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  constexpr auto kMax = std::numeric_limits<Eigen::Index>::max();
  if ((b.rows() != 0 && a.rows() > kMax / b.rows()) ||
      (b.cols() != 0 && a.cols() > kMax / b.cols())) {
    throw std::overflow_error("kron dimension overflow");
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> keep) {
  const auto& layout = rho.layout();
  const Split s = split_indices(layout, keep);

  // Group full indices by traced index, ordered by kept index.
  std::vector<std::vector<Eigen::Index>> groups(s.traced_dim,
                                                std::vector<Eigen::Index>(s.kept_dim));
  for (std::size_t flat = 0; flat < layout.total_dim(); ++flat) {
    groups[s.traced[flat]][s.kept[flat]] = as_index(flat);
  }

  const auto& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(as_index(s.kept_dim), as_index(s.kept_dim));
  for (const auto& g : groups) {
    for (std::size_t r = 0; r < s.kept_dim; ++r) {
      for (std::size_t c = 0; c < s.kept_dim; ++c) {
        out(as_index(r), as_index(c)) += m(g[r], g[c]);
      }
    }
  }
  return DensityOperator::trusted(layout.subset(keep), std::move(out));
}

DensityOperator reduced_state(const StateVector& psi, std::span<const std::string> keep) {
  const auto& layout = psi.layout();
  const Split s = split_indices(layout, keep);
  ComplexMatrix coeffs = ComplexMatrix::Zero(as_index(s.kept_dim), as_index(s.traced_dim));
  for (std::size_t flat = 0; flat < layout.total_dim(); ++flat) {
    coeffs(as_index(s.kept[flat]), as_index(s.traced[flat])) = psi.amplitudes()(as_index(flat));
  }
  return DensityOperator::trusted(layout.subset(keep), coeffs * coeffs.adjoint());
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const HilbertLayout& layout,
                                const std::string& factor) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != layout.total_dim()) {
    throw std::invalid_argument("matrix shape does not match layout");
  }
  const std::size_t pos = layout.position(factor);
  std::size_t stride = 1;
  for (std::size_t f = pos + 1; f < layout.num_factors(); ++f) stride *= layout.factors()[f].dim;
  const std::size_t d = layout.factors()[pos].dim;
  const auto digit = [&](std::size_t i) { return (i / stride) % d; };

  const std::size_t n = layout.total_dim();
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t di = digit(i);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t dj = digit(j);
      const std::size_t src_i = i - di * stride + dj * stride;
      const std::size_t src_j = j - dj * stride + di * stride;
      out(as_index(i), as_index(j)) = m(as_index(src_i), as_index(src_j));
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityOperator& rho, const std::string& factor) {
  return partial_transpose(rho.matrix(), rho.layout(), factor);
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  require_finite(h, "eigensolver input");
  if (!is_hermitian(h, tol::kSpectral)) {
    throw std::invalid_argument("eigensolver input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  require_finite(h, "eigensolver input");
  if (!is_hermitian(h, tol::kSpectral)) {
    throw std::invalid_argument("eigensolver input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

Svd svd(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("svd expects a square matrix");
  require_finite(m, "svd input");
  Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV().adjoint()};
}

StateVector partial_inner_product(const Bra& bra, const StateVector& ket) {
  const auto& kl = ket.layout();
  const auto& bl = bra.layout();
  std::vector<std::string> names;
  for (const auto& f : bl.factors()) {
    if (!kl.contains(f.name) || kl.dim(f.name) != f.dim) {
      throw std::invalid_argument("bra factor '" + f.name + "' does not match the ket layout");
    }
    names.push_back(f.name);
  }
  const HilbertLayout rest = kl.complement(names);

  // Position in the ket of each bra factor, in the bra's own order.
  std::vector<std::size_t> bra_pos;
  for (const auto& f : bl.factors()) bra_pos.push_back(kl.position(f.name));
  std::vector<std::size_t> rest_pos;
  for (const auto& f : rest.factors()) rest_pos.push_back(kl.position(f.name));

  ComplexVector out = ComplexVector::Zero(as_index(rest.total_dim()));
  for (std::size_t flat = 0; flat < kl.total_dim(); ++flat) {
    const Complex a = ket.amplitudes()(as_index(flat));
    if (a == Complex{}) continue;
    const auto multi = kl.unflatten(flat);
    std::size_t s = 0;
    for (std::size_t i = 0; i < bra_pos.size(); ++i) {
      s = s * bl.factors()[i].dim + multi[bra_pos[i]];
    }
    std::size_t c = 0;
    for (std::size_t i = 0; i < rest_pos.size(); ++i) {
      c = c * rest.factors()[i].dim + multi[rest_pos[i]];
    }
    out(as_index(c)) += bra.coefficient(s) * a;
  }
  return {rest, std::move(out), false};
}

}  // namespace hmfs
