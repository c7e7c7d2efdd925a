// Isometries acting trivially on the leaf coordinate:
//   phi(v, x, u) = (v - <alpha'(u), A x + alpha(u)/2> + c, A x + alpha(u), u)
// with A orthogonal commuting with S(u) and alpha'' = S(u) alpha.
//
// The subgroup with A = I is isomorphic to Heis(2n+1) through the data chart
// at u0: h = (h+, h-, h_z) corresponds to alpha'(u0) = -h+, alpha(u0) = h-,
// c = h_z. Composition is exact on the data level:
//   A = A1 A2, alpha = A1 alpha2 + alpha1,
//   c = c1 + c2 + (<A1 alpha2', alpha1> - <alpha1', A1 alpha2>)/2,
// the bracket term being u-independent (a Wronskian pairing of solutions).
#ifndef PLANEWAVE_ISOMETRY_HPP
#define PLANEWAVE_ISOMETRY_HPP

#include "planewave/heisenberg.hpp"
#include "planewave/metrics.hpp"

#include <functional>

namespace planewave {

class Isometry {
 public:
  const Matrix& A() const { return A_; }
  double c() const { return c_; }
  double u0() const { return u0_; }
  const Vector& lam() const { return lam_; }    // alpha(u0)
  const Vector& lam_p() const { return lam_p_; }  // alpha'(u0)
  const OdeSolution& alpha() const { return alpha_; }
  const BrinkmannMetric& metric() const { return metric_; }

  friend Isometry isometry_from_data(const BrinkmannMetric& g, const Matrix& A, double u0,
                                     const Vector& lam_p, const Vector& lam, double c,
                                     double ode_step);

 private:
  Isometry(BrinkmannMetric g, Matrix A, double u0, Vector lam_p, Vector lam, double c,
           OdeSolution alpha)
      : metric_(std::move(g)), A_(std::move(A)), u0_(u0), lam_p_(std::move(lam_p)),
        lam_(std::move(lam)), c_(c), alpha_(std::move(alpha)) {}

  BrinkmannMetric metric_;
  Matrix A_;
  double u0_;
  Vector lam_p_;
  Vector lam_;
  double c_;
  OdeSolution alpha_;
};

// Builds the isometry with alpha(u0) = lam, alpha'(u0) = lam_p, integrating
// alpha across the metric's alpha_span. Contract: A orthogonal (1e-10) and
// commuting with S(u) at 64 Chebyshev samples (1e-8).
Isometry isometry_from_data(const BrinkmannMetric& g, const Matrix& A, double u0,
                            const Vector& lam_p, const Vector& lam, double c,
                            double ode_step = 1e-3);

Isometry identity_isometry(const BrinkmannMetric& g, double u0, double ode_step = 1e-3);

// Never changes the u-coordinate.
Point apply_isometry(const Isometry& phi, const Point& p);

// phi1 after phi2. Requires both isometries to be built on the same metric
// (rank and domain agree).
Isometry compose(const Isometry& phi1, const Isometry& phi2, double ode_step = 1e-3);

Isometry inverse(const Isometry& phi, double ode_step = 1e-3);

// Heisenberg correspondence onto the A = I subgroup; mutually inverse with
// isometry_to_heis at the same u0, and a group morphism against heis_mul.
Isometry heis_to_isometry(const BrinkmannMetric& g, const HeisElement& h, double u0,
                          double ode_step = 1e-3);
// Contract: phi.A() == I (1e-10); otherwise the element has no Heisenberg
// preimage.
HeisElement isometry_to_heis(const Isometry& phi, double u0);

// Deforming curve of the metric: the automorphism P(u0 -> u) of Heis built
// column-wise from 2n solutions of alpha'' = S alpha. Fixes the center, is
// the identity at u = u0, and is a 1-parameter group iff S is constant.
HeisAutomorphism p_curve(const BrinkmannMetric& g, double u0, double u,
                         double ode_step = 1e-3);

// Finite-difference Lie-derivative defect of the metric along the field.
using TangentField = std::function<Vector(const Point&)>;

struct KillingSample {
  Point point;
  Vector vector;    // field value at the point
  double residual;  // >= 0
};

std::vector<KillingSample> killing_samples(const BrinkmannMetric& g,
                                           const TangentField& field,
                                           const std::vector<Point>& samples,
                                           double fd_step = 1e-5);
// Max residual over the samples.
double killing_residual(const BrinkmannMetric& g, const TangentField& field,
                        const std::vector<Point>& samples, double fd_step = 1e-5);

// Pullback defect |J^T g(f(p)) J - g(p)|_inf with the Jacobian of f by
// central differences. The two-metric overload supports chart changes.
using PointMap = std::function<Point(const Point&)>;
using MetricAt = std::function<Matrix(const Point&)>;
double pullback_residual(const MetricAt& g_src, const MetricAt& g_dst, const PointMap& f,
                         const Point& p, double fd_step = 1e-6);
double pullback_residual(const BrinkmannMetric& g, const PointMap& f, const Point& p,
                         double fd_step = 1e-6);
double pullback_residual(const BrinkmannMetric& g, const Isometry& phi, const Point& p,
                         double fd_step = 1e-6);

}  // namespace planewave

#endif
