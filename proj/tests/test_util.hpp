// Shared test helpers: seeded randomness and independent numerical oracles
// (kept free of the library's own algorithm paths).
#ifndef PLANEWAVE_TEST_UTIL_HPP
#define PLANEWAVE_TEST_UTIL_HPP

#include "planewave/heisenberg.hpp"
#include "planewave/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace pwtest {

using planewave::Matrix;
using planewave::Vector;

struct TestRng {
  std::mt19937_64 gen;
  explicit TestRng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
  }

  Matrix matrix(int rows, int cols, double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  Vector vector(int n, double lo = -1.0, double hi = 1.0) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Matrix symmetric(int n, double scale = 1.0) {
    const Matrix m = matrix(n, n);
    return scale * 0.5 * (m + m.transpose());
  }

  Matrix antisymmetric(int n, double scale = 1.0) {
    const Matrix m = matrix(n, n);
    return scale * 0.5 * (m - m.transpose());
  }

  Matrix orthogonal(int n) {
    const Matrix m = matrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    return q;
  }

  Matrix spd(int n, double shift = 1e-3) {
    const Matrix g = matrix(n, n);
    return g.transpose() * g + shift * Matrix::Identity(n, n);
  }
};

// Plain truncated Taylor series for exp(M); independent of the library's
// scaling-and-squaring path. Accurate for moderate norms.
inline Matrix taylor_exp(const Matrix& m, int max_terms = 300) {
  Matrix acc = Matrix::Identity(m.rows(), m.cols());
  Matrix term = acc;
  for (int k = 1; k <= max_terms; ++k) {
    term = (term * m) / static_cast<double>(k);
    acc += term;
    if (term.lpNorm<Eigen::Infinity>() < 1e-20 * acc.lpNorm<Eigen::Infinity>()) break;
  }
  return acc;
}

// Cyclic Jacobi eigenvalue iteration for symmetric matrices; the oracle used
// against the library's eigenvalue-based definiteness verdicts.
inline std::vector<double> jacobi_eigenvalues(Matrix a) {
  const int n = static_cast<int>(a.rows());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const double t =
            (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Random derivation satisfying the validity conditions, scaled to the given
// 1-norm so exponentials at |t| <= 5 stay well conditioned.
inline planewave::Derivation random_valid_derivation(TestRng& rng, int n, double delta,
                                                     double scale = 1.0) {
  planewave::Derivation L;
  L.n = n;
  L.A = rng.matrix(n, n);
  L.B = rng.symmetric(n);
  L.D = rng.symmetric(n);
  L.delta = delta;
  L.C = delta * Matrix::Identity(n, n) - L.A.transpose();
  Matrix m = L.as_matrix();
  m *= scale / std::max(1.0, m.lpNorm<1>());
  return planewave::Derivation::from_matrix(m);
}

inline planewave::HeisElement random_heis(TestRng& rng, int n) {
  return {n, rng.vector(n), rng.vector(n), rng.uniform(-1.0, 1.0)};
}

}  // namespace pwtest

#endif
