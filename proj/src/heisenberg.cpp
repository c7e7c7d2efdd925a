#include "planewave/heisenberg.hpp"

#include <cmath>

namespace planewave {

namespace {
void require_rank_match(int a, int b, const char* who) {
  if (a != b) throw dimension_error(std::string(who) + ": rank mismatch");
}
}  // namespace

HeisElement HeisElement::identity(int n) {
  return {n, Vector::Zero(n), Vector::Zero(n), 0.0};
}

Vector HeisElement::coords() const {
  Vector c(2 * n + 1);
  c << a_plus, a_minus, z;
  return c;
}

HeisElement HeisElement::from_coords(const Vector& c) {
  const int n = static_cast<int>((c.size() - 1) / 2);
  if (c.size() != 2 * n + 1) throw dimension_error("HeisElement: odd coordinate length required");
  return {n, c.head(n), c.segment(n, n), c[2 * n]};
}

HeisVector HeisVector::zero(int n) {
  return {n, Vector::Zero(n), Vector::Zero(n), 0.0};
}

Vector HeisVector::coords() const {
  Vector c(2 * n + 1);
  c << a_plus, a_minus, z;
  return c;
}

HeisVector HeisVector::from_coords(const Vector& c) {
  const int n = static_cast<int>((c.size() - 1) / 2);
  if (c.size() != 2 * n + 1) throw dimension_error("HeisVector: odd coordinate length required");
  return {n, c.head(n), c.segment(n, n), c[2 * n]};
}

double symplectic(const Vector& ap, const Vector& am, const Vector& bp, const Vector& bm) {
  return ap.dot(bm) - am.dot(bp);
}

HeisElement heis_mul(const HeisElement& g, const HeisElement& h) {
  require_rank_match(g.n, h.n, "heis_mul");
  return {g.n, g.a_plus + h.a_plus, g.a_minus + h.a_minus,
          g.z + h.z + 0.5 * symplectic(g.a_plus, g.a_minus, h.a_plus, h.a_minus)};
}

HeisElement heis_inverse(const HeisElement& g) {
  return {g.n, -g.a_plus, -g.a_minus, -g.z};
}

HeisVector heis_bracket(const HeisVector& x, const HeisVector& y) {
  require_rank_match(x.n, y.n, "heis_bracket");
  HeisVector out = HeisVector::zero(x.n);
  out.z = symplectic(x.a_plus, x.a_minus, y.a_plus, y.a_minus);
  return out;
}

Matrix Derivation::as_matrix() const {
  Matrix m = Matrix::Zero(2 * n + 1, 2 * n + 1);
  m.block(0, 0, n, n) = A;
  m.block(0, n, n, n) = B;
  m.block(n, 0, n, n) = D;
  m.block(n, n, n, n) = C;
  m(2 * n, 2 * n) = delta;
  return m;
}

Derivation Derivation::from_matrix(const Matrix& m) {
  detail::require_square(m, "Derivation::from_matrix");
  const int n = static_cast<int>((m.rows() - 1) / 2);
  if (m.rows() != 2 * n + 1)
    throw dimension_error("Derivation::from_matrix: size must be 2n+1");
  Derivation L;
  L.n = n;
  L.A = m.block(0, 0, n, n);
  L.B = m.block(0, n, n, n);
  L.D = m.block(n, 0, n, n);
  L.C = m.block(n, n, n, n);
  L.delta = m(2 * n, 2 * n);
  return L;
}

DerivationReport derivation_check(const Derivation& L, double tol) {
  DerivationReport report;
  const int n = L.n;
  if (L.A.rows() != n || L.A.cols() != n || L.B.rows() != n || L.B.cols() != n ||
      L.C.rows() != n || L.C.cols() != n || L.D.rows() != n || L.D.cols() != n)
    throw dimension_error("derivation_check: blocks must be n x n");

  const double b_res = (L.B - L.B.transpose()).lpNorm<Eigen::Infinity>();
  const double d_res = (L.D - L.D.transpose()).lpNorm<Eigen::Infinity>();
  const double tr_res =
      (L.A + L.C.transpose() - L.delta * Matrix::Identity(n, n)).lpNorm<Eigen::Infinity>();

  if (b_res > tol)
    report.violations.push_back("B not symmetric (residual " + std::to_string(b_res) + ")");
  if (d_res > tol)
    report.violations.push_back("D not symmetric (residual " + std::to_string(d_res) + ")");
  if (tr_res > tol)
    report.violations.push_back("A + C^T != delta*I (residual " + std::to_string(tr_res) + ")");
  report.valid = report.violations.empty();
  return report;
}

bool derivation_valid(const Derivation& L, double tol) {
  return derivation_check(L, tol).valid;
}

HeisAutomorphism HeisAutomorphism::identity(int n) {
  return {n, Matrix::Identity(2 * n + 1, 2 * n + 1)};
}

HeisAutomorphism HeisAutomorphism::compose(const HeisAutomorphism& other) const {
  require_rank_match(n, other.n, "HeisAutomorphism::compose");
  return {n, linear * other.linear};
}

double bracket_residual(const HeisAutomorphism& phi) {
  const int dim = 2 * phi.n + 1;
  double worst = 0.0;
  for (int i = 0; i < dim; ++i) {
    const HeisVector xi = HeisVector::from_coords(Vector::Unit(dim, i));
    const HeisVector pxi = HeisVector::from_coords(phi.linear * xi.coords());
    for (int j = i + 1; j < dim; ++j) {
      const HeisVector yj = HeisVector::from_coords(Vector::Unit(dim, j));
      const HeisVector pyj = HeisVector::from_coords(phi.linear * yj.coords());
      const Vector lhs = phi.linear * heis_bracket(xi, yj).coords();
      const Vector rhs = heis_bracket(pxi, pyj).coords();
      worst = std::max(worst, (lhs - rhs).lpNorm<Eigen::Infinity>());
    }
  }
  return worst;
}

HeisAutomorphism make_automorphism(const Matrix& linear, double tol) {
  detail::require_square(linear, "make_automorphism");
  const int n = static_cast<int>((linear.rows() - 1) / 2);
  if (linear.rows() != 2 * n + 1)
    throw dimension_error("make_automorphism: size must be 2n+1");
  HeisAutomorphism phi{n, linear};
  const double res = bracket_residual(phi);
  if (res > tol)
    throw contract_error("make_automorphism: bracket preservation fails (residual " +
                         std::to_string(res) + ")");
  return phi;
}

HeisAutomorphism automorphism_from_derivation(const Derivation& L, double t, double tol) {
  const DerivationReport report = derivation_check(L, tol);
  if (!report.valid) {
    std::string msg = "automorphism_from_derivation: invalid derivation:";
    for (const auto& v : report.violations) msg += " " + v + ";";
    throw contract_error(msg);
  }
  return HeisAutomorphism{L.n, mat_exp(t * L.as_matrix())};
}

HeisElement apply_automorphism(const HeisAutomorphism& phi, const HeisElement& g) {
  require_rank_match(phi.n, g.n, "apply_automorphism");
  return HeisElement::from_coords(phi.linear * g.coords());
}

HeisVector apply_automorphism(const HeisAutomorphism& phi, const HeisVector& x) {
  require_rank_match(phi.n, x.n, "apply_automorphism");
  return HeisVector::from_coords(phi.linear * x.coords());
}

HeisAutomorphism mink_deforming_curve(int n, double u) {
  // exp(u L) = I + u L since L^2 = 0.
  Matrix m = Matrix::Identity(2 * n + 1, 2 * n + 1);
  m.block(n, 0, n, n) = u * Matrix::Identity(n, n);
  return {n, m};
}

}  // namespace planewave
