#include "planewave/homogeneous.hpp"

#include <cmath>
#include <memory>

namespace planewave {

const char* to_string(Family f) { return f == Family::a ? "a" : "b"; }

Derivation HomogeneousModel::derivation() const {
  Derivation L;
  L.n = n;
  L.A = delta() * Matrix::Identity(n, n) + F;
  L.B = B;
  L.D = Matrix::Identity(n, n);
  L.C = F;
  L.delta = delta();
  return L;
}

void HomogeneousModel::validate(double tol) const {
  if (n < 1) throw dimension_error("HomogeneousModel: rank must be >= 1");
  if (F.rows() != n || F.cols() != n || B.rows() != n || B.cols() != n)
    throw dimension_error("HomogeneousModel: F and B must be n x n");
  if (!is_antisymmetric(F, tol))
    throw contract_error("HomogeneousModel: F is not antisymmetric");
  if (!is_symmetric(B, tol)) throw contract_error("HomogeneousModel: B is not symmetric");
}

namespace {
// Conjugation S(u) = e^{cF} B e^{-cF} evaluated through a unitary
// diagonalization of the antisymmetric F (iF is Hermitian), so repeated
// evaluations cost O(n^2) without matrix exponentials.
class ConjugatedProvider {
 public:
  ConjugatedProvider(const Matrix& F, const Matrix& B) {
    const int n = static_cast<int>(F.rows());
    Eigen::MatrixXcd H = std::complex<double>(0, 1) * F.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    V_ = es.eigenvectors();
    theta_ = es.eigenvalues();  // F = V diag(-i theta) V^*
    Bt_ = V_.adjoint() * B.cast<std::complex<double>>() * V_;
    n_ = n;
  }

  // e^{cF} B e^{-cF}; the result is symmetric in exact arithmetic, so the
  // complex round-trip noise is symmetrized away.
  Matrix at(double c) const {
    Eigen::VectorXcd phase(n_);
    for (int k = 0; k < n_; ++k)
      phase[k] = std::exp(std::complex<double>(0, -theta_[k] * c));
    const Eigen::MatrixXcd scaled =
        phase.asDiagonal() * Bt_ * phase.asDiagonal().inverse();
    const Matrix out = (V_ * scaled * V_.adjoint()).real();
    return 0.5 * (out + out.transpose());
  }

 private:
  int n_ = 0;
  Eigen::MatrixXcd V_;
  Vector theta_;
  Eigen::MatrixXcd Bt_;
};
}  // namespace

BrinkmannMetric build_metric(const HomogeneousModel& m) {
  m.validate();
  auto conj = std::make_shared<ConjugatedProvider>(m.F, m.B);
  if (m.family == Family::a) {
    auto provider = [conj](double u) { return conj->at(u); };
    return BrinkmannMetric(m.n, provider, Interval::all(), {-8.0, 8.0});
  }
  auto provider = [conj](double u) -> Matrix { return conj->at(std::log(u)) / (u * u); };
  return BrinkmannMetric(m.n, provider, {0.0, std::numeric_limits<double>::infinity()},
                         {1.0 / 16.0, 16.0});
}

Point transversal_flow(const HomogeneousModel& m, double s, const Point& p) {
  m.validate();
  Point out;
  if (m.family == Family::a) {
    out.v = p.v;
    out.x = mat_exp(s * m.F) * p.x;
    out.u = p.u + s;
  } else {
    if (!(s > 0)) throw domain_error("transversal_flow: family b needs s > 0");
    if (!(p.u > 0)) throw domain_error("transversal_flow: family b needs p.u > 0");
    out.v = s * p.v;
    out.x = mat_exp(std::log(1.0 / s) * m.F) * p.x;
    out.u = p.u / s;
  }
  return out;
}

std::vector<Matrix> isotropy_algebra(const Matrix& F, const Matrix& B) {
  detail::require_square(F, "isotropy_algebra");
  if (F.rows() != B.rows() || B.rows() != B.cols())
    throw dimension_error("isotropy_algebra: F and B must be n x n");
  const int n = static_cast<int>(F.rows());
  const int m = n * (n - 1) / 2;
  if (m == 0) return {};

  // Basis E_k = e_i e_j^T - e_j e_i^T, i < j, stacked commutators as columns.
  std::vector<Matrix> basis;
  basis.reserve(m);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix E = Matrix::Zero(n, n);
      E(i, j) = 1.0;
      E(j, i) = -1.0;
      basis.push_back(E);
    }

  Matrix op(2 * n * n, m);
  for (int k = 0; k < m; ++k) {
    const Matrix cf = basis[k] * F - F * basis[k];
    const Matrix cb = basis[k] * B - B * basis[k];
    op.block(0, k, n * n, 1) = Eigen::Map<const Vector>(cf.data(), n * n);
    op.block(n * n, k, n * n, 1) = Eigen::Map<const Vector>(cb.data(), n * n);
  }

  Eigen::JacobiSVD<Matrix> svd(op, Eigen::ComputeFullV);
  const Vector sig = svd.singularValues();
  const double cutoff = sig.size() > 0 ? 1e-9 * sig[0] : 0.0;
  std::vector<Matrix> out;
  for (int k = 0; k < m; ++k) {
    const double s = k < sig.size() ? sig[k] : 0.0;
    if (s <= cutoff) {
      const Vector coeff = svd.matrixV().col(k);
      Matrix E = Matrix::Zero(n, n);
      for (int j = 0; j < m; ++j) E += coeff[j] * basis[j];
      out.push_back(E / std::sqrt(2.0));  // unit Frobenius norm
    }
  }
  return out;
}

Classification classify(const HomogeneousModel& m, double tol) {
  m.validate(tol);
  Classification out;
  out.complete = m.family == Family::a;
  out.flat = m.B.lpNorm<Eigen::Infinity>() <= 1e-12;

  Eigen::JacobiSVD<Matrix> svd(m.B);
  const Vector sig = svd.singularValues();
  const bool nondegenerate =
      !out.flat && sig[sig.size() - 1] > 1e-9 * sig[0];
  const bool commutes = (m.F * m.B - m.B * m.F).lpNorm<Eigen::Infinity>() <= tol;
  out.cahen_wallach = nondegenerate && commutes && m.family == Family::a;

  out.isotropy_dim = static_cast<int>(isotropy_algebra(m.F, m.B).size());
  return out;
}

InvariantForm invariant_form(const Derivation& L_reduced, double qzT, double qTT) {
  const int n = L_reduced.n;
  if (!derivation_valid(L_reduced))
    throw contract_error("invariant_form: L is not a valid derivation");
  if ((L_reduced.D - Matrix::Identity(n, n)).lpNorm<Eigen::Infinity>() > 1e-10)
    throw contract_error("invariant_form: L must be in the D = I reduced form");
  if (!(qzT < 0))
    throw contract_error("invariant_form: q(z,T) must be negative (signature)");

  InvariantForm q;
  q.n = n;
  q.qzT = qzT;
  q.qTT = qTT;
  q.entries = Matrix::Zero(n + 2, n + 2);
  q.entries(0, 0) = qTT;
  q.entries(0, 1) = q.entries(1, 0) = qzT;
  q.entries.block(2, 2, n, n) = -qzT * Matrix::Identity(n, n);
  return q;
}

ReducedDerivation reduce_D_to_identity(const Derivation& L, double tol) {
  const DerivationReport report = derivation_check(L, tol);
  if (!report.valid)
    throw contract_error("reduce_D_to_identity: input is not a valid derivation");
  const int n = L.n;

  const Definiteness kind = definiteness(L.D);
  if (kind == Definiteness::indefinite || kind == Definiteness::degenerate)
    throw contract_error(
        "reduce_D_to_identity: D must be definite (no invariant Lorentzian metric "
        "otherwise); got " + std::string(to_string(kind)));

  // P D P^T = diag(lambda), Lambda = diag(sqrt|lambda|), P_Lam = Lambda P.
  Eigen::SelfAdjointEigenSolver<Matrix> es(L.D);
  const Matrix P = es.eigenvectors().transpose();
  Matrix lambda_sqrt = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) lambda_sqrt(i, i) = std::sqrt(std::abs(es.eigenvalues()[i]));
  const Matrix P_lam = lambda_sqrt * P;
  const Matrix P_lam_invT = P_lam.transpose().inverse();

  Matrix J = Matrix::Zero(2 * n + 1, 2 * n + 1);
  J.block(0, 0, n, n) = P_lam;
  J.block(n, n, n, n) = P_lam_invT;
  J(2 * n, 2 * n) = 1.0;

  const bool negate = kind == Definiteness::negative;
  if (negate) {
    Matrix J0 = Matrix::Identity(2 * n + 1, 2 * n + 1);
    J0.block(n, n, n, n) = -Matrix::Identity(n, n);
    J0(2 * n, 2 * n) = -1.0;
    J = J0 * J;
  }

  ReducedDerivation out;
  out.negated = negate;
  out.conjugator = make_automorphism(J);
  out.reduced = Derivation::from_matrix(J * L.as_matrix() * J.inverse());
  // Snap the numerically-identity D block.
  out.reduced.D = Matrix::Identity(n, n);
  return out;
}

namespace {
Matrix blau_shear(const Derivation& L) {
  const int n = L.n;
  const Matrix P = L.delta * Matrix::Identity(n, n) - 0.5 * (L.A + L.A.transpose());
  Matrix psi = Matrix::Identity(2 * n + 1, 2 * n + 1);
  psi.block(0, n, n, n) = P;
  return psi;
}

void require_blau_input(const Derivation& L, double tol) {
  if (!derivation_valid(L, tol))
    throw contract_error("blau_normal_form: input is not a valid derivation");
  if ((L.D - Matrix::Identity(L.n, L.n)).lpNorm<Eigen::Infinity>() > tol)
    throw contract_error("blau_normal_form: input must have D = I");
}
}  // namespace

Derivation blau_normal_form(const Derivation& L, double tol) {
  require_blau_input(L, tol);
  const Matrix psi = blau_shear(L);
  Derivation out = Derivation::from_matrix(psi * L.as_matrix() * psi.inverse());
  out.D = Matrix::Identity(L.n, L.n);
  return out;
}

HeisAutomorphism blau_conjugation(const Derivation& L, double tol) {
  require_blau_input(L, tol);
  return make_automorphism(blau_shear(L));
}

Point coordinate_transform_b(const HomogeneousModel& m, const Point& p) {
  m.validate();
  if (m.family != Family::b)
    throw contract_error("coordinate_transform_b: family b model required");
  Point out;
  out.v = -std::exp(p.u) * p.v;
  out.x = mat_exp(-p.u * m.F) * p.x;
  out.u = std::exp(-p.u);
  return out;
}

Matrix pre_transform_metric_at(const HomogeneousModel& m, const Point& p) {
  const int n = m.n;
  if (p.x.size() != n) throw dimension_error("pre_transform_metric_at: rank mismatch");
  const Vector Fy = m.F * p.x;
  Matrix g = Matrix::Zero(n + 2, n + 2);
  g(0, n + 1) = g(n + 1, 0) = 1.0;
  g.block(1, 1, n, n) = Matrix::Identity(n, n);
  g.block(1, n + 1, n, 1) = -Fy;
  g.block(n + 1, 1, 1, n) = -Fy.transpose();
  g(n + 1, n + 1) = 2.0 * p.v + Fy.squaredNorm() + p.x.dot(m.B * p.x);
  return g;
}

bool nilpotent_lorentz_check(const Matrix& N, double tol) {
  detail::require_square(N, "nilpotent_lorentz_check");
  const int dim = static_cast<int>(N.rows());
  const double scale = N.lpNorm<Eigen::Infinity>();
  if (scale == 0.0) throw contract_error("nilpotent_lorentz_check: N must be nonzero");

  const Matrix Nn = N / scale;
  Matrix power = Nn;
  for (int k = 1; k < dim; ++k) power = power * Nn;
  if (power.lpNorm<Eigen::Infinity>() > tol)
    throw contract_error("nilpotent_lorentz_check: N is not nilpotent");

  auto rank_of = [&](const Matrix& M) -> int {
    Eigen::JacobiSVD<Matrix> svd(M);
    const Vector sig = svd.singularValues();
    if (sig.size() == 0 || sig[0] == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < sig.size(); ++i)
      if (sig[i] > 1e-9 * sig[0]) ++r;
    return r;
  };

  const Matrix N2 = Nn * Nn;
  const Matrix N3 = N2 * Nn;
  if (N3.lpNorm<Eigen::Infinity>() > tol) return false;  // nilpotency order > 3
  const int r1 = rank_of(Nn);
  const int r2 = rank_of(N2);
  // One block of size exactly 3 (r2 = 1, r3 = 0) and no size-2 blocks
  // (r1 - r2 counts blocks of size >= 2, all of which must be the 3-block).
  return r2 == 1 && r1 == 2;
}

}  // namespace planewave
