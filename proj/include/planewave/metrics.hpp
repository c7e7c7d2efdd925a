// Plane-wave metrics in Brinkmann and Rosen coordinates, curvature by
// finite differences, geodesics, and the completeness probe.
//
// Brinkmann chart (v, x, u), basis order (d_v, d_1..d_n, d_u):
//   g = 2 du dv + x^T S(u) x du^2 + sum_i dx_i^2.
// Curvature convention: R(X,Y)Z = nab_X nab_Y Z - nab_Y nab_X Z - nab_[X,Y] Z
// and R_{abcd} = g(R(d_a,d_b) d_c, d_d). With that choice this metric has
//   R(d_u, d_i, d_u, d_j) = +S_ij(u),
// and the transverse geodesic equation reads x'' = +S(u) x (u')^2.
#ifndef PLANEWAVE_METRICS_HPP
#define PLANEWAVE_METRICS_HPP

#include "planewave/heisenberg.hpp"
#include "planewave/linalg.hpp"

#include <string>
#include <vector>

namespace planewave {

struct Point {
  double v = 0.0;
  Vector x;  // length n
  double u = 0.0;

  Vector coords() const;  // (v, x, u) as an n+2 vector
  static Point from_coords(const Vector& c);
};

class BrinkmannMetric {
 public:
  // S(u) must be symmetric on the domain; checked on a few alpha_span
  // samples at construction (tol 1e-10).
  BrinkmannMetric(int n, MatrixProvider S, Interval domain, Interval alpha_span);

  int rank() const { return n_; }
  int dim() const { return n_ + 2; }
  const Interval& domain() const { return domain_; }
  // Finite working sub-interval for ODE-backed constructions.
  const Interval& alpha_span() const { return alpha_span_; }
  Matrix S(double u) const;

  static BrinkmannMetric constant(const Matrix& S0, Interval domain = Interval::all());
  static BrinkmannMetric flat(int n, Interval domain = Interval::all());
  // Tabulated S with entrywise Catmull-Rom cubic interpolation.
  static BrinkmannMetric tabulated(const std::vector<double>& grid,
                                   const std::vector<Matrix>& samples);

 private:
  int n_;
  MatrixProvider S_;
  Interval domain_;
  Interval alpha_span_;
};

class RosenMetric {
 public:
  // Q(u) must be symmetric positive definite; checked on samples at
  // construction and again at every evaluation.
  RosenMetric(int n, MatrixProvider Q, Interval domain, Interval sample_span);

  int rank() const { return n_; }
  const Interval& domain() const { return domain_; }
  Matrix Q(double u) const;

 private:
  int n_;
  MatrixProvider Q_;
  Interval domain_;
};

// Metric tensor at p in the basis (d_v, d_1..d_n, d_u).
Matrix metric_at(const BrinkmannMetric& g, const Point& p);
Matrix rosen_metric_at(const RosenMetric& g, const Point& p);

// Christoffel symbols Gamma^k_{ij} from central finite differences of
// metric_at; result indexed [k](i,j).
std::vector<Matrix> christoffel_at(const BrinkmannMetric& g, const Point& p,
                                   double fd_step = 1e-5);

// Fully lowered curvature tensor R_{abcd} from central finite differences
// of the Christoffel symbols (outer step fd_step, inner Gamma step 1e-5).
class RiemannTensor {
 public:
  explicit RiemannTensor(int dim);
  double& operator()(int a, int b, int c, int d);
  double operator()(int a, int b, int c, int d) const;
  int dim() const { return dim_; }
  double max_abs() const;

 private:
  int dim_;
  std::vector<double> data_;
};

RiemannTensor riemann_at(const BrinkmannMetric& g, const Point& p, double fd_step = 1e-4);

enum class GeodesicVerdict { completed, left_domain, blew_up };

struct GeodesicState {
  Point point;
  Vector velocity;  // (dv, dx, du), length n+2
};

struct GeodesicTrace {
  std::vector<double> t;
  std::vector<GeodesicState> states;
  GeodesicVerdict verdict = GeodesicVerdict::completed;
  double exit_parameter = 0.0;  // set for left_domain / blew_up

  // CSV with header t,v,x1..xn,u,dv,dx1..dxn,du and a trailing comment
  // line carrying the verdict.
  std::string to_csv() const;
};

constexpr double kBlowUpThreshold = 1e12;

// RK4 integration of the geodesic equation with christoffel_at. Domain exit
// and blow-up events are located by bisection to 1e-10 in the parameter.
GeodesicTrace geodesic(const BrinkmannMetric& g, const Point& p0, const Vector& v0,
                       double t_max, double step, double fd_step = 1e-5);

struct ProbeResult {
  bool incomplete = false;
  GeodesicTrace witness;       // set when incomplete
  GeodesicState witness_start; // initial data of the witness
  int traces = 0;
};

// Fires transverse geodesics (x = 0, dx = 0, du = +-1) from points spread
// over the domain. Incomplete iff some trace leaves the domain or blows up
// at finite parameter. A no-escape result is NOT a completeness proof.
ProbeResult completeness_probe(const BrinkmannMetric& g, int sample_count, double t_max,
                               double step = 0.2);

// Energy g(gamma', gamma') along a state; conserved along exact geodesics.
double geodesic_energy(const BrinkmannMetric& g, const GeodesicState& s);

// Action of h on (v,x,u): translations on the a-/z channels, and the level
// dependent unipotent action on the a+ channel with translation parts
// int_0^u alpha and int_0^u beta, beta(s) = -Q(s)^{-1} h+ and
// alpha(s) = -1/2 h+^T Q(s)^{-1} h+, integrated by composite Simpson.
Point rosen_heis_action(const RosenMetric& g, const HeisElement& h, const Point& p,
                        double step);

const char* to_string(GeodesicVerdict v);

}  // namespace planewave

#endif
