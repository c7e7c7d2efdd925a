// Dense linear-algebra and ODE/quadrature kernels shared by every module.
#ifndef PLANEWAVE_LINALG_HPP
#define PLANEWAVE_LINALG_HPP

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace planewave {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Error taxonomy. The CLI maps these onto exit codes.
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct contract_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Open interval of the real line; lo/hi may be +-infinity.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double u) const { return u > lo && u < hi; }
  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  static Interval all() { return {}; }
};

inline Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

namespace detail {
template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* who) {
  if (m.rows() != m.cols())
    throw dimension_error(std::string(who) + ": matrix must be square");
  if (!m.allFinite())
    throw numeric_error(std::string(who) + ": non-finite entries");
}
}  // namespace detail

// Matrix exponential by scaling-and-squaring with a fixed-order series core.
// The scaled argument has 1-norm <= 1/2, where the truncated series is
// accurate to well below double roundoff.
template <typename Derived>
MatrixX<typename Derived::Scalar> mat_exp(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Mat = MatrixX<Scalar>;
  detail::require_square(m, "mat_exp");
  const Eigen::Index n = m.rows();

  const double norm = m.template lpNorm<1>();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat t = m / std::ldexp(1.0, squarings);

  // Horner evaluation of sum_{k<=24} t^k / k!.
  constexpr int order = 24;
  Mat acc = Mat::Identity(n, n);
  for (int k = order; k >= 1; --k) {
    acc = Mat::Identity(n, n) + (t * acc) / static_cast<Scalar>(k);
  }
  for (int i = 0; i < squarings; ++i) acc = acc * acc;
  return acc;
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m, double tol) {
  detail::require_square(m, "is_symmetric");
  return (m - m.transpose()).template lpNorm<Eigen::Infinity>() <= tol;
}

template <typename Derived>
bool is_antisymmetric(const Eigen::MatrixBase<Derived>& m, double tol) {
  detail::require_square(m, "is_antisymmetric");
  return (m + m.transpose()).template lpNorm<Eigen::Infinity>() <= tol;
}

template <typename Derived>
bool is_orthogonal(const Eigen::MatrixBase<Derived>& m, double tol) {
  detail::require_square(m, "is_orthogonal");
  const MatrixX<typename Derived::Scalar> g = m.transpose() * m;
  return (g - MatrixX<typename Derived::Scalar>::Identity(m.rows(), m.cols()))
             .template lpNorm<Eigen::Infinity>() <= tol;
}

enum class Definiteness { positive, negative, indefinite, degenerate };

const char* to_string(Definiteness d);

// Verdict by eigenvalue signs; eigenvalues with |lambda| <= tol count as zero.
// Passing tol < 0 selects the scale-invariant default 1e-9 * max-norm(M).
Definiteness definiteness(const Matrix& m, double tol = -1.0);

// Second-order linear ODE solutions alpha'' = S(u) alpha sampled on a grid,
// with derivative samples for cubic Hermite dense output (order 3).
class OdeSolution {
 public:
  OdeSolution() = default;
  OdeSolution(std::vector<double> grid, std::vector<Vector> values,
              std::vector<Vector> derivatives, std::vector<Vector> second_derivatives);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<Vector>& values() const { return values_; }
  const std::vector<Vector>& derivatives() const { return derivatives_; }
  int interpolation_order() const { return 3; }
  Interval span() const { return {grid_.front(), grid_.back()}; }
  Eigen::Index dim() const { return values_.empty() ? 0 : values_.front().size(); }

  // Dense output; at grid nodes this reproduces the stored samples exactly.
  Vector value(double u) const;
  Vector derivative(double u) const;

 private:
  std::size_t segment(double u) const;

  std::vector<double> grid_;
  std::vector<Vector> values_;
  std::vector<Vector> derivatives_;
  std::vector<Vector> second_derivatives_;
};

using MatrixProvider = std::function<Matrix(double)>;
using VectorProvider = std::function<Vector(double)>;

// Classical fixed-step RK4 on the first-order system (alpha, alpha')' =
// (alpha', S alpha), integrated both ways from u0 across span.
OdeSolution solve_second_order(const MatrixProvider& S, double u0, const Vector& a0,
                               const Vector& a0p, const Interval& span, double step);

// Composite Simpson rule; b < a is handled by the sign convention
// int_a^b = -int_b^a.
Vector quadrature(const VectorProvider& f, double a, double b, double step);

// Chebyshev-distributed sample points on [lo, hi], endpoints excluded.
std::vector<double> chebyshev_points(double lo, double hi, int count);

}  // namespace planewave

#endif
