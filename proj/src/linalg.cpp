#include "planewave/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace planewave {

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive: return "positive";
    case Definiteness::negative: return "negative";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::degenerate: return "degenerate";
  }
  return "?";
}

Definiteness definiteness(const Matrix& m, double tol) {
  detail::require_square(m, "definiteness");
  if (!is_symmetric(m, 1e-10 * std::max(1.0, m.lpNorm<Eigen::Infinity>())))
    throw contract_error("definiteness: matrix is not symmetric");
  if (tol < 0) tol = 1e-9 * m.lpNorm<Eigen::Infinity>();

  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const Vector ev = es.eigenvalues();
  int pos = 0, neg = 0, zero = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= tol)
      ++zero;
    else if (ev[i] > 0)
      ++pos;
    else
      ++neg;
  }
  if (zero > 0) return Definiteness::degenerate;
  if (neg == 0) return Definiteness::positive;
  if (pos == 0) return Definiteness::negative;
  return Definiteness::indefinite;
}

OdeSolution::OdeSolution(std::vector<double> grid, std::vector<Vector> values,
                         std::vector<Vector> derivatives,
                         std::vector<Vector> second_derivatives)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      derivatives_(std::move(derivatives)),
      second_derivatives_(std::move(second_derivatives)) {
  if (grid_.size() < 2 || grid_.size() != values_.size() ||
      grid_.size() != derivatives_.size() || grid_.size() != second_derivatives_.size())
    throw dimension_error("OdeSolution: inconsistent sample counts");
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (!(grid_[i] > grid_[i - 1]))
      throw contract_error("OdeSolution: grid must be strictly increasing");
}

std::size_t OdeSolution::segment(double u) const {
  if (u < grid_.front() - 1e-12 || u > grid_.back() + 1e-12)
    throw domain_error("OdeSolution: evaluation outside span");
  auto it = std::upper_bound(grid_.begin(), grid_.end(), u);
  std::size_t k = static_cast<std::size_t>(it - grid_.begin());
  if (k == 0) return 0;
  if (k >= grid_.size()) return grid_.size() - 2;
  return k - 1;
}

namespace {
// Cubic Hermite on one segment from endpoint values and derivatives.
Vector hermite(double u, double u0, double u1, const Vector& f0, const Vector& f1,
               const Vector& d0, const Vector& d1) {
  const double h = u1 - u0;
  const double s = (u - u0) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * h * d0 +
         (-2 * s3 + 3 * s2) * f1 + (s3 - s2) * h * d1;
}
}  // namespace

Vector OdeSolution::value(double u) const {
  const std::size_t k = segment(u);
  if (u == grid_[k]) return values_[k];
  if (u == grid_[k + 1]) return values_[k + 1];
  return hermite(u, grid_[k], grid_[k + 1], values_[k], values_[k + 1],
                 derivatives_[k], derivatives_[k + 1]);
}

Vector OdeSolution::derivative(double u) const {
  const std::size_t k = segment(u);
  if (u == grid_[k]) return derivatives_[k];
  if (u == grid_[k + 1]) return derivatives_[k + 1];
  return hermite(u, grid_[k], grid_[k + 1], derivatives_[k], derivatives_[k + 1],
                 second_derivatives_[k], second_derivatives_[k + 1]);
}

namespace {
struct Rk4State {
  Vector a;
  Vector ap;
};

Matrix eval_S(const MatrixProvider& S, double u, Eigen::Index n) {
  Matrix s = S(u);
  if (s.rows() != n || s.cols() != n)
    throw dimension_error("solve_second_order: provider dimension mismatch");
  if (!s.allFinite()) throw numeric_error("solve_second_order: non-finite S(u)");
  return s;
}

Rk4State rk4_step(const MatrixProvider& S, double u, double h, const Rk4State& y) {
  const Eigen::Index n = y.a.size();
  auto f = [&](double uu, const Rk4State& s) -> Rk4State {
    return {s.ap, eval_S(S, uu, n) * s.a};
  };
  const Rk4State k1 = f(u, y);
  const Rk4State k2 = f(u + h / 2, {y.a + (h / 2) * k1.a, y.ap + (h / 2) * k1.ap});
  const Rk4State k3 = f(u + h / 2, {y.a + (h / 2) * k2.a, y.ap + (h / 2) * k2.ap});
  const Rk4State k4 = f(u + h, {y.a + h * k3.a, y.ap + h * k3.ap});
  return {y.a + (h / 6) * (k1.a + 2 * k2.a + 2 * k3.a + k4.a),
          y.ap + (h / 6) * (k1.ap + 2 * k2.ap + 2 * k3.ap + k4.ap)};
}

// March from u0 to target, appending samples after u0 (exclusive).
void march(const MatrixProvider& S, double u0, double target, double step,
           Rk4State y, std::vector<double>& grid, std::vector<Vector>& vals,
           std::vector<Vector>& ders, std::vector<Vector>& secs) {
  const double dir = target >= u0 ? 1.0 : -1.0;
  const double len = std::abs(target - u0);
  const auto n_steps = static_cast<long>(std::ceil(len / step - 1e-12));
  double u = u0;
  for (long k = 0; k < n_steps; ++k) {
    const double next = (k + 1 == n_steps) ? target : u0 + dir * step * (k + 1);
    y = rk4_step(S, u, next - u, y);
    u = next;
    grid.push_back(u);
    vals.push_back(y.a);
    ders.push_back(y.ap);
    secs.push_back(eval_S(S, u, y.a.size()) * y.a);
  }
}
}  // namespace

OdeSolution solve_second_order(const MatrixProvider& S, double u0, const Vector& a0,
                               const Vector& a0p, const Interval& span, double step) {
  if (!(step > 0)) throw contract_error("solve_second_order: step must be positive");
  if (a0.size() != a0p.size())
    throw dimension_error("solve_second_order: initial data dimension mismatch");
  if (!span.finite()) throw domain_error("solve_second_order: span must be finite");
  if (u0 < span.lo - 1e-12 || u0 > span.hi + 1e-12)
    throw domain_error("solve_second_order: u0 outside span");

  std::vector<double> grid{u0};
  std::vector<Vector> vals{a0}, ders{a0p};
  std::vector<Vector> secs{eval_S(S, u0, a0.size()) * a0};

  // Backward sweep first, then reverse so the grid comes out increasing.
  if (span.lo < u0) {
    std::vector<double> g;
    std::vector<Vector> v, d, s2;
    march(S, u0, span.lo, step, {a0, a0p}, g, v, d, s2);
    std::reverse(g.begin(), g.end());
    std::reverse(v.begin(), v.end());
    std::reverse(d.begin(), d.end());
    std::reverse(s2.begin(), s2.end());
    g.insert(g.end(), grid.begin(), grid.end());
    v.insert(v.end(), vals.begin(), vals.end());
    d.insert(d.end(), ders.begin(), ders.end());
    s2.insert(s2.end(), secs.begin(), secs.end());
    grid = std::move(g);
    vals = std::move(v);
    ders = std::move(d);
    secs = std::move(s2);
  }
  if (span.hi > u0) march(S, u0, span.hi, step, {a0, a0p}, grid, vals, ders, secs);

  if (grid.size() < 2) {
    // Degenerate span [u0, u0]; duplicate with a tiny synthetic segment is
    // not meaningful, so reject instead.
    throw domain_error("solve_second_order: span has zero length");
  }
  return OdeSolution(std::move(grid), std::move(vals), std::move(ders), std::move(secs));
}

Vector quadrature(const VectorProvider& f, double a, double b, double step) {
  if (!(step > 0)) throw contract_error("quadrature: step must be positive");
  if (a == b) {
    Vector v = f(a);
    return Vector::Zero(v.size());
  }
  const double sign = b >= a ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  long n = static_cast<long>(std::ceil((hi - lo) / step - 1e-12));
  if (n % 2 == 1) ++n;  // Simpson needs an even panel count
  n = std::max<long>(n, 2);
  const double h = (hi - lo) / static_cast<double>(n);

  Vector sum = f(lo) + f(hi);
  for (long k = 1; k < n; ++k) {
    const Vector fk = f(lo + h * static_cast<double>(k));
    if (!fk.allFinite()) throw numeric_error("quadrature: non-finite integrand");
    sum += (k % 2 == 1 ? 4.0 : 2.0) * fk;
  }
  return sign * (h / 3.0) * sum;
}

std::vector<double> chebyshev_points(double lo, double hi, int count) {
  std::vector<double> pts;
  pts.reserve(count);
  const double mid = 0.5 * (lo + hi), rad = 0.5 * (hi - lo);
  for (int k = 0; k < count; ++k) {
    const double theta = M_PI * (2.0 * k + 1.0) / (2.0 * count);
    pts.push_back(mid + rad * std::cos(theta));
  }
  return pts;
}

}  // namespace planewave
