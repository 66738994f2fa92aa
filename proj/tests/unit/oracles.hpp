#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// the library's index arithmetic; each oracle spells its loops out directly.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hmfs/rng.hpp"
#include "hmfs/tensor.hpp"

namespace hmfs::testing {

/// Four nested loops; no block copies.
inline ComplexMatrix kron_loops(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Tr_B of a three-factor operator on (A: da, B: db, C: dc), written as an
/// explicit index sum. Result lives on (A, C).
inline ComplexMatrix trace_middle(const ComplexMatrix& rho, int da, int db, int dc) {
  ComplexMatrix out = ComplexMatrix::Zero(da * dc, da * dc);
  for (int a = 0; a < da; ++a)
    for (int c = 0; c < dc; ++c)
      for (int a2 = 0; a2 < da; ++a2)
        for (int c2 = 0; c2 < dc; ++c2)
          for (int b = 0; b < db; ++b)
            out(a * dc + c, a2 * dc + c2) +=
                rho((a * db + b) * dc + c, (a2 * db + b) * dc + c2);
  return out;
}

/// Tr_{A,C} of a three-factor operator; result lives on B.
inline ComplexMatrix trace_outer(const ComplexMatrix& rho, int da, int db, int dc) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int b = 0; b < db; ++b)
    for (int b2 = 0; b2 < db; ++b2)
      for (int a = 0; a < da; ++a)
        for (int c = 0; c < dc; ++c)
          out(b, b2) += rho((a * db + b) * dc + c, (a * db + b2) * dc + c);
  return out;
}

inline ComplexMatrix random_matrix(int rows, int cols, RngStream& rng) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

inline ComplexMatrix random_hermitian(int n, RngStream& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

/// Full-rank density matrix G G^dagger / Tr(G G^dagger), made exactly Hermitian.
inline ComplexMatrix random_density(int n, RngStream& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

/// Evaporated Alice-Bob state re-derived by expanding <Psi|X> term by term:
///   sum_m f_m [ (1/sqrt2) |m>|1>_B + sqrt((m+1)/(N+1)) |m+1>|0>_B ]
/// on (A_out: N+1, B: 2), flat index = level * 2 + b.
inline ComplexVector derived_alice_bob_state(const ComplexVector& f) {
  const auto n = f.size();
  const double nd = static_cast<double>(n);
  ComplexVector out = ComplexVector::Zero((n + 1) * 2);
  for (Eigen::Index m = 0; m < n; ++m) {
    out(m * 2 + 1) += f(m) / std::sqrt(2.0);
    out((m + 1) * 2 + 0) += f(m) * std::sqrt(static_cast<double>(m + 1) / (nd + 1.0));
  }
  return out;
}

/// Entanglement fidelity closed form re-derived from the direct trace:
///   F_e = (1/(N(N+1)^2)) sum_m |f_m|^2 (m + 1 + (N+1)/2)^2.
inline double derived_entanglement_fidelity(const ComplexVector& f) {
  const double nd = static_cast<double>(f.size());
  double total = 0.0;
  for (Eigen::Index m = 0; m < f.size(); ++m) {
    const double k = static_cast<double>(m + 1) + 0.5 * (nd + 1.0);
    total += std::norm(f(m)) * k * k;
  }
  return total / (nd * (nd + 1.0) * (nd + 1.0));
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w) {
  x.assign(order, 0.0);
  w.assign(order, 0.0);
  for (int i = 0; i < order; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

/// Integral over qubit pure states (uniform on the Bloch sphere) of g(phi),
/// exact for polynomial integrands of low degree.
template <typename F>
double bloch_sphere_average(F&& g, int order = 16) {
  std::vector<double> x, w;
  gauss_legendre(order, x, w);
  const int azimuth = 2 * order;
  double total = 0.0;
  for (int i = 0; i < order; ++i) {
    const double cos_theta = x[i];
    const double c = std::sqrt(0.5 * (1.0 + cos_theta));
    const double s = std::sqrt(0.5 * (1.0 - cos_theta));
    for (int k = 0; k < azimuth; ++k) {
      const double phi = 2.0 * M_PI * k / azimuth;
      ComplexVector v(2);
      v << c, std::polar(s, phi);
      total += w[i] * g(v) / azimuth;
    }
  }
  return total / 2.0;
}

}  // namespace hmfs::testing
