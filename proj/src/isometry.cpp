#include "planewave/isometry.hpp"

#include <cmath>

namespace planewave {

namespace {
void check_isometry_data(const BrinkmannMetric& g, const Matrix& A, double u0) {
  const int n = g.rank();
  if (A.rows() != n || A.cols() != n)
    throw dimension_error("isometry_from_data: A must be n x n");
  if (!is_orthogonal(A, 1e-10))
    throw contract_error("isometry_from_data: A is not orthogonal");
  const Interval span = g.alpha_span();
  if (!(u0 >= span.lo && u0 <= span.hi))
    throw domain_error("isometry_from_data: u0 outside the metric's alpha span");
  double worst = 0.0;
  for (double u : chebyshev_points(span.lo, span.hi, 64)) {
    const Matrix s = g.S(u);
    worst = std::max(worst, (A * s - s * A).lpNorm<Eigen::Infinity>());
  }
  if (worst > 1e-8)
    throw contract_error("isometry_from_data: A does not commute with S(u) (residual " +
                         std::to_string(worst) + ")");
}
}  // namespace

Isometry isometry_from_data(const BrinkmannMetric& g, const Matrix& A, double u0,
                            const Vector& lam_p, const Vector& lam, double c,
                            double ode_step) {
  const int n = g.rank();
  if (lam.size() != n || lam_p.size() != n)
    throw dimension_error("isometry_from_data: lam/lam_p must have length n");
  check_isometry_data(g, A, u0);
  auto S = [&g](double u) { return g.S(u); };
  OdeSolution alpha = solve_second_order(S, u0, lam, lam_p, g.alpha_span(), ode_step);
  return Isometry(g, A, u0, lam_p, lam, c, std::move(alpha));
}

Isometry identity_isometry(const BrinkmannMetric& g, double u0, double ode_step) {
  const int n = g.rank();
  return isometry_from_data(g, Matrix::Identity(n, n), u0, Vector::Zero(n),
                            Vector::Zero(n), 0.0, ode_step);
}

Point apply_isometry(const Isometry& phi, const Point& p) {
  const Interval span = phi.alpha().span();
  if (!(p.u >= span.lo && p.u <= span.hi))
    throw domain_error("apply_isometry: u outside the alpha span");
  const Vector a = phi.alpha().value(p.u);
  const Vector ap = phi.alpha().derivative(p.u);
  Point out;
  out.x = phi.A() * p.x + a;
  out.v = p.v - ap.dot(phi.A() * p.x + 0.5 * a) + phi.c();
  out.u = p.u;
  return out;
}

namespace {
void check_same_metric(const Isometry& a, const Isometry& b, const char* who) {
  if (a.metric().rank() != b.metric().rank())
    throw contract_error(std::string(who) + ": metric mismatch (rank)");
  const Interval da = a.metric().domain(), db = b.metric().domain();
  if (da.lo != db.lo || da.hi != db.hi)
    throw contract_error(std::string(who) + ": metric mismatch (domain)");
}
}  // namespace

Isometry compose(const Isometry& phi1, const Isometry& phi2, double ode_step) {
  check_same_metric(phi1, phi2, "compose");
  const double u0 = phi1.u0();
  const Vector a2 = phi2.alpha().value(u0);
  const Vector a2p = phi2.alpha().derivative(u0);
  const Vector a1 = phi1.alpha().value(u0);
  const Vector a1p = phi1.alpha().derivative(u0);

  const Matrix A = phi1.A() * phi2.A();
  const Vector lam = phi1.A() * a2 + a1;
  const Vector lam_p = phi1.A() * a2p + a1p;
  const double c = phi1.c() + phi2.c() +
                   0.5 * ((phi1.A() * a2p).dot(a1) - a1p.dot(phi1.A() * a2));
  return isometry_from_data(phi1.metric(), A, u0, lam_p, lam, c, ode_step);
}

Isometry inverse(const Isometry& phi, double ode_step) {
  // The Wronskian correction in the composition law cancels for inverses,
  // leaving c_inv = -c.
  const Matrix Ai = phi.A().transpose();
  return isometry_from_data(phi.metric(), Ai, phi.u0(), -(Ai * phi.lam_p()),
                            -(Ai * phi.lam()), -phi.c(), ode_step);
}

Isometry heis_to_isometry(const BrinkmannMetric& g, const HeisElement& h, double u0,
                          double ode_step) {
  if (h.n != g.rank()) throw dimension_error("heis_to_isometry: rank mismatch");
  const int n = g.rank();
  return isometry_from_data(g, Matrix::Identity(n, n), u0, -h.a_plus, h.a_minus, h.z,
                            ode_step);
}

HeisElement isometry_to_heis(const Isometry& phi, double u0) {
  const int n = phi.metric().rank();
  if ((phi.A() - Matrix::Identity(n, n)).lpNorm<Eigen::Infinity>() > 1e-10)
    throw contract_error("isometry_to_heis: A != I has no Heisenberg preimage");
  HeisElement h;
  h.n = n;
  if (u0 == phi.u0()) {
    h.a_plus = -phi.lam_p();
    h.a_minus = phi.lam();
  } else {
    h.a_plus = -phi.alpha().derivative(u0);
    h.a_minus = phi.alpha().value(u0);
  }
  h.z = phi.c();
  return h;
}

HeisAutomorphism p_curve(const BrinkmannMetric& g, double u0, double u, double ode_step) {
  const int n = g.rank();
  const Interval span = g.alpha_span();
  if (!(u0 >= span.lo && u0 <= span.hi) || !(u >= span.lo && u <= span.hi))
    throw domain_error("p_curve: u0 and u must lie in the alpha span");

  auto S = [&g](double uu) { return g.S(uu); };
  const Interval solve_span{std::min(u0, u), std::max(u0, u)};
  Matrix m = Matrix::Zero(2 * n + 1, 2 * n + 1);
  m(2 * n, 2 * n) = 1.0;  // the center is fixed

  if (u == u0) {
    m.block(0, 0, 2 * n, 2 * n) = Matrix::Identity(2 * n, 2 * n);
    return {n, m};
  }

  for (int i = 0; i < n; ++i) {
    // X_i column: beta(u0) = 0, beta'(u0) = -e_i; image (-beta'(u), beta(u)).
    OdeSolution sx = solve_second_order(S, u0, Vector::Zero(n), -Vector::Unit(n, i),
                                        solve_span, ode_step);
    m.block(0, i, n, 1) = -sx.derivative(u);
    m.block(n, i, n, 1) = sx.value(u);
    // Y_i column: beta(u0) = e_i, beta'(u0) = 0.
    OdeSolution sy = solve_second_order(S, u0, Vector::Unit(n, i), Vector::Zero(n),
                                        solve_span, ode_step);
    m.block(0, n + i, n, 1) = -sy.derivative(u);
    m.block(n, n + i, n, 1) = sy.value(u);
  }
  return {n, m};
}

std::vector<KillingSample> killing_samples(const BrinkmannMetric& g,
                                           const TangentField& field,
                                           const std::vector<Point>& samples,
                                           double fd_step) {
  const int dim = g.dim();
  std::vector<KillingSample> out;
  out.reserve(samples.size());
  for (const Point& p : samples) {
    // (L_K g)_ab = K^c d_c g_ab + g_cb d_a K^c + g_ac d_b K^c
    const Vector K = field(p);
    if (K.size() != dim) throw dimension_error("killing_samples: field dimension mismatch");

    auto shift = [&](const Point& q, int c, double h) {
      Vector coords = q.coords();
      coords[c] += h;
      return Point::from_coords(coords);
    };
    std::vector<Matrix> dg(dim);
    Matrix dK(dim, dim);  // dK(c, a) = d_c K^a
    for (int c = 0; c < dim; ++c) {
      dg[c] = (metric_at(g, shift(p, c, fd_step)) - metric_at(g, shift(p, c, -fd_step))) /
              (2 * fd_step);
      dK.row(c) = ((field(shift(p, c, fd_step)) - field(shift(p, c, -fd_step))) /
                   (2 * fd_step))
                      .transpose();
    }
    const Matrix gm = metric_at(g, p);
    Matrix lie = Matrix::Zero(dim, dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c)
          s += K[c] * dg[c](a, b) + gm(c, b) * dK(a, c) + gm(a, c) * dK(b, c);
        lie(a, b) = s;
      }
    out.push_back({p, K, lie.lpNorm<Eigen::Infinity>()});
  }
  return out;
}

double killing_residual(const BrinkmannMetric& g, const TangentField& field,
                        const std::vector<Point>& samples, double fd_step) {
  double worst = 0.0;
  for (const KillingSample& s : killing_samples(g, field, samples, fd_step))
    worst = std::max(worst, s.residual);
  return worst;
}

double pullback_residual(const MetricAt& g_src, const MetricAt& g_dst, const PointMap& f,
                         const Point& p, double fd_step) {
  const Vector c0 = p.coords();
  const int dim = static_cast<int>(c0.size());
  Matrix J(dim, dim);
  for (int b = 0; b < dim; ++b) {
    Vector cp = c0, cm = c0;
    cp[b] += fd_step;
    cm[b] -= fd_step;
    const Vector fp = f(Point::from_coords(cp)).coords();
    const Vector fm = f(Point::from_coords(cm)).coords();
    J.col(b) = (fp - fm) / (2 * fd_step);
  }
  const Matrix pulled = J.transpose() * g_dst(f(p)) * J;
  return (pulled - g_src(p)).lpNorm<Eigen::Infinity>();
}

double pullback_residual(const BrinkmannMetric& g, const PointMap& f, const Point& p,
                         double fd_step) {
  auto at = [&g](const Point& q) { return metric_at(g, q); };
  return pullback_residual(at, at, f, p, fd_step);
}

double pullback_residual(const BrinkmannMetric& g, const Isometry& phi, const Point& p,
                         double fd_step) {
  return pullback_residual(g, [&phi](const Point& q) { return apply_isometry(phi, q); }, p,
                           fd_step);
}

}  // namespace planewave
