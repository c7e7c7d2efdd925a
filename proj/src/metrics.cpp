#include "planewave/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>

namespace planewave {

Vector Point::coords() const {
  Vector c(x.size() + 2);
  c[0] = v;
  c.segment(1, x.size()) = x;
  c[x.size() + 1] = u;
  return c;
}

Point Point::from_coords(const Vector& c) {
  if (c.size() < 2) throw dimension_error("Point::from_coords: need at least (v,u)");
  Point p;
  p.v = c[0];
  p.x = c.segment(1, c.size() - 2);
  p.u = c[c.size() - 1];
  return p;
}

BrinkmannMetric::BrinkmannMetric(int n, MatrixProvider S, Interval domain,
                                 Interval alpha_span)
    : n_(n), S_(std::move(S)), domain_(domain), alpha_span_(alpha_span) {
  if (n < 1) throw dimension_error("BrinkmannMetric: rank must be >= 1");
  if (!alpha_span_.finite() || !(alpha_span_.lo < alpha_span_.hi))
    throw contract_error("BrinkmannMetric: alpha_span must be a finite interval");
  for (double u : chebyshev_points(alpha_span_.lo, alpha_span_.hi, 8)) {
    const Matrix s = S_(u);
    if (s.rows() != n || s.cols() != n)
      throw dimension_error("BrinkmannMetric: S(u) has wrong size");
    if (!is_symmetric(s, 1e-10 * std::max(1.0, s.lpNorm<Eigen::Infinity>())))
      throw contract_error("BrinkmannMetric: S(u) is not symmetric");
  }
}

Matrix BrinkmannMetric::S(double u) const {
  if (!domain_.contains(u)) throw domain_error("BrinkmannMetric: u outside domain");
  return S_(u);
}

BrinkmannMetric BrinkmannMetric::constant(const Matrix& S0, Interval domain) {
  detail::require_square(S0, "BrinkmannMetric::constant");
  const int n = static_cast<int>(S0.rows());
  const Interval span = intersect(domain, {-8.0, 8.0});
  return BrinkmannMetric(n, [S0](double) { return S0; }, domain, span);
}

BrinkmannMetric BrinkmannMetric::flat(int n, Interval domain) {
  return constant(Matrix::Zero(n, n), domain);
}

BrinkmannMetric BrinkmannMetric::tabulated(const std::vector<double>& grid,
                                           const std::vector<Matrix>& samples) {
  if (grid.size() < 4 || grid.size() != samples.size())
    throw dimension_error(
        "BrinkmannMetric::tabulated: need at least 4 matching grid/sample pairs");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw contract_error("BrinkmannMetric::tabulated: grid must be strictly increasing");
  const int n = static_cast<int>(samples.front().rows());

  // Catmull-Rom: derivative estimates from centered differences, one-sided
  // at the boundary.
  auto g = std::make_shared<std::vector<double>>(grid);
  auto s = std::make_shared<std::vector<Matrix>>(samples);
  auto provider = [g, s](double u) -> Matrix {
    const auto& gg = *g;
    const auto& ss = *s;
    auto it = std::upper_bound(gg.begin(), gg.end(), u);
    std::size_t k = static_cast<std::size_t>(it - gg.begin());
    if (k == 0) k = 1;
    if (k >= gg.size()) k = gg.size() - 1;
    const std::size_t i0 = k - 1, i1 = k;
    const double h = gg[i1] - gg[i0];
    auto slope = [&](std::size_t i) -> Matrix {
      if (i == 0) return (ss[1] - ss[0]) / (gg[1] - gg[0]);
      if (i + 1 == gg.size()) return (ss[i] - ss[i - 1]) / (gg[i] - gg[i - 1]);
      return (ss[i + 1] - ss[i - 1]) / (gg[i + 1] - gg[i - 1]);
    };
    const double t = (u - gg[i0]) / h;
    const double t2 = t * t, t3 = t2 * t;
    Matrix out = (2 * t3 - 3 * t2 + 1) * ss[i0] + (t3 - 2 * t2 + t) * h * slope(i0) +
                 (-2 * t3 + 3 * t2) * ss[i1] + (t3 - t2) * h * slope(i1);
    return out;
  };
  // The domain is open, so the working span stays one grid cell inside it.
  const Interval dom{grid.front(), grid.back()};
  const Interval span{grid[1], grid[grid.size() - 2]};
  return BrinkmannMetric(n, provider, dom, span);
}

RosenMetric::RosenMetric(int n, MatrixProvider Q, Interval domain, Interval sample_span)
    : n_(n), Q_(std::move(Q)), domain_(domain) {
  if (n < 1) throw dimension_error("RosenMetric: rank must be >= 1");
  for (double u : chebyshev_points(sample_span.lo, sample_span.hi, 8)) {
    const Matrix q = Q_(u);
    if (q.rows() != n || q.cols() != n)
      throw dimension_error("RosenMetric: Q(u) has wrong size");
    if (definiteness(q) != Definiteness::positive)
      throw contract_error("RosenMetric: Q(u) is not positive definite");
  }
}

Matrix RosenMetric::Q(double u) const {
  if (!domain_.contains(u)) throw domain_error("RosenMetric: u outside domain");
  const Matrix q = Q_(u);
  if (definiteness(q) != Definiteness::positive)
    throw contract_error("RosenMetric: Q(u) is not positive definite");
  return q;
}

Matrix metric_at(const BrinkmannMetric& g, const Point& p) {
  if (!g.domain().contains(p.u)) throw domain_error("metric_at: u outside domain");
  if (p.x.size() != g.rank()) throw dimension_error("metric_at: point rank mismatch");
  const int n = g.rank();
  Matrix out = Matrix::Zero(n + 2, n + 2);
  out(0, n + 1) = out(n + 1, 0) = 1.0;
  out.block(1, 1, n, n) = Matrix::Identity(n, n);
  out(n + 1, n + 1) = p.x.dot(g.S(p.u) * p.x);
  return out;
}

Matrix rosen_metric_at(const RosenMetric& g, const Point& p) {
  if (!g.domain().contains(p.u)) throw domain_error("rosen_metric_at: u outside domain");
  if (p.x.size() != g.rank()) throw dimension_error("rosen_metric_at: point rank mismatch");
  const int n = g.rank();
  Matrix out = Matrix::Zero(n + 2, n + 2);
  out(0, n + 1) = out(n + 1, 0) = 1.0;
  out.block(1, 1, n, n) = g.Q(p.u);
  return out;
}

namespace {
Point shift(const Point& p, int coord, double h) {
  Point q = p;
  if (coord == 0)
    q.v += h;
  else if (coord == static_cast<int>(p.x.size()) + 1)
    q.u += h;
  else
    q.x[coord - 1] += h;
  return q;
}
}  // namespace

std::vector<Matrix> christoffel_at(const BrinkmannMetric& g, const Point& p,
                                   double fd_step) {
  const int dim = g.dim();
  if (!(fd_step > 0)) throw contract_error("christoffel_at: fd_step must be positive");
  if (!(p.u - fd_step > g.domain().lo && p.u + fd_step < g.domain().hi))
    throw domain_error("christoffel_at: insufficient domain margin around u");

  std::vector<Matrix> dg(dim);  // dg[c](a,b) = partial_c g_ab
  for (int c = 0; c < dim; ++c)
    dg[c] = (metric_at(g, shift(p, c, fd_step)) - metric_at(g, shift(p, c, -fd_step))) /
            (2 * fd_step);

  const Matrix ginv = metric_at(g, p).inverse();
  std::vector<Matrix> gamma(dim, Matrix::Zero(dim, dim));
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        double sum = 0.0;
        for (int l = 0; l < dim; ++l)
          sum += ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        gamma[k](i, j) = gamma[k](j, i) = 0.5 * sum;
      }
  return gamma;
}

RiemannTensor::RiemannTensor(int dim)
    : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

double& RiemannTensor::operator()(int a, int b, int c, int d) {
  return data_[((static_cast<std::size_t>(a) * dim_ + b) * dim_ + c) * dim_ + d];
}

double RiemannTensor::operator()(int a, int b, int c, int d) const {
  return data_[((static_cast<std::size_t>(a) * dim_ + b) * dim_ + c) * dim_ + d];
}

double RiemannTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

RiemannTensor riemann_at(const BrinkmannMetric& g, const Point& p, double fd_step) {
  const int dim = g.dim();
  if (!(p.u - 2 * fd_step > g.domain().lo && p.u + 2 * fd_step < g.domain().hi))
    throw domain_error("riemann_at: insufficient domain margin around u");

  const std::vector<Matrix> gamma = christoffel_at(g, p);
  // dgamma[c][k](i,j) = partial_c Gamma^k_{ij}
  std::vector<std::vector<Matrix>> dgamma(dim);
  for (int c = 0; c < dim; ++c) {
    const auto plus = christoffel_at(g, shift(p, c, fd_step));
    const auto minus = christoffel_at(g, shift(p, c, -fd_step));
    dgamma[c].resize(dim);
    for (int k = 0; k < dim; ++k) dgamma[c][k] = (plus[k] - minus[k]) / (2 * fd_step);
  }

  const Matrix gm = metric_at(g, p);
  RiemannTensor out(dim);
  // up[e] of R(d_a, d_b) d_c, then lower with the metric.
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c) {
        for (int d = 0; d < dim; ++d) {
          double val = 0.0;
          for (int e = 0; e < dim; ++e) {
            double up = dgamma[a][e](b, c) - dgamma[b][e](a, c);
            for (int f = 0; f < dim; ++f)
              up += gamma[e](a, f) * gamma[f](b, c) - gamma[e](b, f) * gamma[f](a, c);
            val += gm(e, d) * up;
          }
          out(a, b, c, d) = val;
        }
      }
  return out;
}

const char* to_string(GeodesicVerdict v) {
  switch (v) {
    case GeodesicVerdict::completed: return "completed";
    case GeodesicVerdict::left_domain: return "left_domain";
    case GeodesicVerdict::blew_up: return "blew_up";
  }
  return "?";
}

std::string GeodesicTrace::to_csv() const {
  std::ostringstream os;
  const int n = states.empty() ? 0 : static_cast<int>(states.front().point.x.size());
  os << "t,v";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  os << ",u,dv";
  for (int i = 1; i <= n; ++i) os << ",dx" << i;
  os << ",du\n";
  char buf[32];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
  };
  for (std::size_t k = 0; k < t.size(); ++k) {
    put(t[k]);
    const auto& s = states[k];
    os << ',';
    put(s.point.v);
    for (int i = 0; i < n; ++i) {
      os << ',';
      put(s.point.x[i]);
    }
    os << ',';
    put(s.point.u);
    for (int i = 0; i < n + 2; ++i) {
      os << ',';
      put(s.velocity[i]);
    }
    os << '\n';
  }
  os << "# verdict: " << to_string(verdict);
  if (verdict != GeodesicVerdict::completed) {
    os << " t=";
    put(exit_parameter);
  }
  os << '\n';
  return os.str();
}

double geodesic_energy(const BrinkmannMetric& g, const GeodesicState& s) {
  const Matrix gm = metric_at(g, s.point);
  return s.velocity.dot(gm * s.velocity);
}

namespace {
struct PhaseState {
  Vector pos;  // (v, x, u)
  Vector vel;
};

PhaseState rk4_geo_step(const BrinkmannMetric& g, const PhaseState& y, double h,
                        double fd_step) {
  auto accel = [&](const Vector& pos, const Vector& vel) -> Vector {
    const auto gamma = christoffel_at(g, Point::from_coords(pos), fd_step);
    Vector a = Vector::Zero(vel.size());
    for (int k = 0; k < vel.size(); ++k) a[k] = -vel.dot(gamma[k] * vel);
    return a;
  };
  const Vector k1p = y.vel, k1v = accel(y.pos, y.vel);
  const Vector k2p = y.vel + (h / 2) * k1v, k2v = accel(y.pos + (h / 2) * k1p, k2p);
  const Vector k3p = y.vel + (h / 2) * k2v, k3v = accel(y.pos + (h / 2) * k2p, k3p);
  const Vector k4p = y.vel + h * k3v, k4v = accel(y.pos + h * k3p, k4p);
  return {y.pos + (h / 6) * (k1p + 2 * k2p + 2 * k3p + k4p),
          y.vel + (h / 6) * (k1v + 2 * k2v + 2 * k3v + k4v)};
}

// A step whose stage points already leave the domain counts as an event.
std::optional<PhaseState> try_step(const BrinkmannMetric& g, const PhaseState& y, double h,
                                   double fd_step) {
  try {
    return rk4_geo_step(g, y, h, fd_step);
  } catch (const domain_error&) {
    return std::nullopt;
  }
}

bool state_ok(const BrinkmannMetric& g, const PhaseState& y, double margin) {
  const double u = y.pos[y.pos.size() - 1];
  if (!(u - margin > g.domain().lo && u + margin < g.domain().hi)) return false;
  if (!y.pos.allFinite() || !y.vel.allFinite()) return false;
  const double norm = std::max(y.pos.lpNorm<Eigen::Infinity>(), y.vel.lpNorm<Eigen::Infinity>());
  return norm <= kBlowUpThreshold;
}
}  // namespace

GeodesicTrace geodesic(const BrinkmannMetric& g, const Point& p0, const Vector& v0,
                       double t_max, double step, double fd_step) {
  if (!(step > 0)) throw contract_error("geodesic: step must be positive");
  if (v0.size() != g.dim()) throw dimension_error("geodesic: velocity dimension mismatch");
  if (!g.domain().contains(p0.u)) throw domain_error("geodesic: start outside domain");
  if (!v0.allFinite()) throw numeric_error("geodesic: non-finite initial velocity");

  // The Christoffel stencil needs this much room below/above u.
  const double margin = 2 * fd_step;

  GeodesicTrace trace;
  PhaseState y{p0.coords(), v0};
  if (!state_ok(g, y, margin)) throw domain_error("geodesic: start too close to boundary");
  trace.t.push_back(0.0);
  trace.states.push_back({p0, v0});

  double t = 0.0;
  const auto n_steps = static_cast<long>(std::ceil(t_max / step - 1e-12));
  for (long k = 0; k < n_steps; ++k) {
    const double next_t = (k + 1 == n_steps) ? t_max : step * static_cast<double>(k + 1);
    const double h = next_t - t;
    std::optional<PhaseState> y_next = try_step(g, y, h, fd_step);

    if (!y_next || !state_ok(g, *y_next, margin)) {
      // Bisect the step until the event parameter is located to 1e-10.
      double lo = 0.0, hi = h;
      std::optional<PhaseState> bad = y_next;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        std::optional<PhaseState> y_mid = try_step(g, y, mid, fd_step);
        if (y_mid && state_ok(g, *y_mid, margin)) {
          lo = mid;
        } else {
          hi = mid;
          bad = y_mid;
        }
      }
      bool left = true;  // a step that cannot even be evaluated left the domain
      if (bad) {
        const double u_bad = bad->pos[bad->pos.size() - 1];
        left = std::isfinite(u_bad) &&
               !(u_bad - margin > g.domain().lo && u_bad + margin < g.domain().hi);
      }
      trace.verdict = left ? GeodesicVerdict::left_domain : GeodesicVerdict::blew_up;
      trace.exit_parameter = t + hi;
      if (lo > 0.0) {
        std::optional<PhaseState> y_lo = try_step(g, y, lo, fd_step);
        if (y_lo) {
          trace.t.push_back(t + lo);
          trace.states.push_back({Point::from_coords(y_lo->pos), y_lo->vel});
        }
      }
      return trace;
    }

    y = *y_next;
    t = next_t;
    trace.t.push_back(t);
    trace.states.push_back({Point::from_coords(y.pos), y.vel});
  }
  trace.verdict = GeodesicVerdict::completed;
  return trace;
}

ProbeResult completeness_probe(const BrinkmannMetric& g, int sample_count, double t_max,
                               double step) {
  if (sample_count < 1) throw contract_error("completeness_probe: sample_count must be >= 1");
  const int n = g.rank();
  const Interval dom = g.domain();

  // Base points spread over the domain; bounded sides stay at dyadic
  // distances from the boundary so exits are exercised from several depths.
  std::vector<double> bases;
  for (int k = 0; k < sample_count; ++k) {
    if (dom.finite()) {
      const double w = dom.hi - dom.lo;
      bases.push_back(dom.lo + w * (k + 1.0) / (sample_count + 1.0));
    } else if (std::isfinite(dom.lo)) {
      bases.push_back(dom.lo + std::ldexp(1.0, -(k % 6)));
    } else if (std::isfinite(dom.hi)) {
      bases.push_back(dom.hi - std::ldexp(1.0, -(k % 6)));
    } else {
      bases.push_back(static_cast<double>(k - sample_count / 2));
    }
  }

  ProbeResult result;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    for (double du : {1.0, -1.0}) {
      Point p0{0.25 * static_cast<double>(k), Vector::Zero(n), bases[k]};
      Vector v0 = Vector::Zero(n + 2);
      v0[0] = 1.0;  // dv
      v0[n + 1] = du;
      GeodesicTrace tr = geodesic(g, p0, v0, t_max, step);
      ++result.traces;
      if (tr.verdict != GeodesicVerdict::completed) {
        result.incomplete = true;
        result.witness = std::move(tr);
        result.witness_start = {p0, v0};
        return result;
      }
    }
  }
  return result;
}

Point rosen_heis_action(const RosenMetric& g, const HeisElement& h, const Point& p,
                        double step) {
  if (h.n != g.rank()) throw dimension_error("rosen_heis_action: rank mismatch");
  if (!g.domain().contains(p.u) || !g.domain().contains(0.0))
    throw domain_error("rosen_heis_action: p.u and 0 must lie in the domain");

  const Vector lam = h.a_plus;
  Point out = p;
  out.v = p.v + lam.dot(p.x) + h.z + 0.5 * h.a_plus.dot(h.a_minus);
  out.x = p.x + h.a_minus;

  if (lam.lpNorm<Eigen::Infinity>() > 0.0) {
    const int n = g.rank();
    auto integrand = [&](double s) -> Vector {
      const Matrix q = g.Q(s);
      Eigen::FullPivLU<Matrix> lu(q);
      if (!lu.isInvertible())
        throw numeric_error("rosen_heis_action: singular Q at quadrature node");
      const Vector qi_lam = lu.solve(lam);
      Vector f(n + 1);
      f[0] = -0.5 * lam.dot(qi_lam);  // alpha
      f.segment(1, n) = -qi_lam;      // beta
      return f;
    };
    const Vector integral = quadrature(integrand, 0.0, p.u, step);
    out.v += integral[0];
    out.x += integral.segment(1, n);
  }
  return out;
}

}  // namespace planewave
