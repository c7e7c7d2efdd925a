#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "planewave/linalg.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace planewave;
using pwtest::TestRng;

TEST_CASE("mat_exp: zero and diagonal cases") {
  CHECK((mat_exp(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() == 0.0);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = std::log(2.0);
  d(1, 1) = std::log(3.0);
  const Matrix e = mat_exp(d);
  CHECK(e(0, 0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(e(1, 1) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(std::abs(e(0, 1)) + std::abs(e(1, 0)) < 1e-15);
}

TEST_CASE("mat_exp: quarter rotation against the series oracle") {
  Matrix m(2, 2);
  m << 0.0, -M_PI_2, M_PI_2, 0.0;
  // Oracle first: plain truncated Taylor, checked against the known value.
  const Matrix oracle = pwtest::taylor_exp(m);
  Matrix expected(2, 2);
  expected << 0.0, -1.0, 1.0, 0.0;
  REQUIRE((oracle - expected).lpNorm<Eigen::Infinity>() < 1e-13);
  CHECK((mat_exp(m) - expected).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("mat_exp: matches series reference at moderate norms") {
  TestRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    Matrix m = rng.matrix(n, n);
    m *= 2.0 / std::max(1.0, m.lpNorm<1>());
    const Matrix ref = pwtest::taylor_exp(m);
    const double rel =
        (mat_exp(m) - ref).lpNorm<Eigen::Infinity>() / ref.lpNorm<Eigen::Infinity>();
    CHECK(rel < 1e-12);
  }
}

TEST_CASE("mat_exp: exp(M+N) = exp(M) exp(N) for commuting pairs") {
  TestRng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    Matrix m = rng.matrix(n, n);
    m *= 5.0 / std::max(1.0, m.lpNorm<1>());
    // N is a polynomial in M, so it commutes with M.
    Matrix nn = 0.4 * m * m + 0.7 * m + 0.3 * Matrix::Identity(n, n);
    nn *= 5.0 / std::max(1.0, nn.lpNorm<1>());
    const Matrix lhs = mat_exp(m + nn);
    const Matrix rhs = mat_exp(m) * mat_exp(nn);
    const double res =
        (lhs - rhs).lpNorm<Eigen::Infinity>() / std::max(1.0, lhs.lpNorm<Eigen::Infinity>());
    CHECK(res < 1e-10);
  }
}

TEST_CASE("mat_exp: antisymmetric argument gives an orthogonal result") {
  TestRng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const Matrix f = rng.antisymmetric(n, 4.0);
    CHECK(is_orthogonal(mat_exp(f), 1e-10));
  }
}

TEST_CASE("mat_exp: rejects non-square input") {
  CHECK_THROWS_AS(mat_exp(Matrix::Zero(2, 3)), dimension_error);
}

TEST_CASE("symmetry predicates") {
  CHECK(is_symmetric(Matrix::Identity(3, 3), 1e-12));
  Matrix rot(2, 2);
  rot << 0, 1, -1, 0;
  CHECK(is_antisymmetric(rot, 1e-12));
  Matrix shear(2, 2);
  shear << 1, 1, 0, 1;
  CHECK_FALSE(is_orthogonal(shear, 1e-9));
  CHECK_THROWS_AS(is_symmetric(Matrix::Zero(2, 3), 1e-10), dimension_error);
}

TEST_CASE("definiteness: fixed verdicts") {
  CHECK(definiteness(Matrix::Identity(3, 3)) == Definiteness::positive);
  Matrix ind = Matrix::Zero(2, 2);
  ind(0, 0) = 1;
  ind(1, 1) = -1;
  CHECK(definiteness(ind) == Definiteness::indefinite);
  CHECK(definiteness(-Matrix::Identity(2, 2)) == Definiteness::negative);
  Matrix deg = Matrix::Zero(2, 2);
  deg(0, 0) = 1;
  CHECK(definiteness(deg) == Definiteness::degenerate);

  Matrix asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(definiteness(asym), contract_error);
}

TEST_CASE("definiteness: random SPD matrices against the Jacobi oracle") {
  TestRng rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + trial % 5;
    const Matrix m = rng.spd(n);
    const auto ev = pwtest::jacobi_eigenvalues(m);
    REQUIRE(ev.front() > 0.0);  // oracle agrees the matrix is positive
    CHECK(definiteness(m) == Definiteness::positive);
  }
}

TEST_CASE("definiteness: invariant under orthogonal conjugation") {
  TestRng rng(22);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + trial % 4;
    const Matrix d = rng.symmetric(n, 2.0);
    const Matrix p = rng.orthogonal(n);
    const Matrix c = p * d * p.transpose();
    CHECK(definiteness(d) == definiteness(0.5 * (c + c.transpose())));
  }
}

TEST_CASE("solve_second_order: free motion is linear") {
  const Vector mu = Vector::Constant(2, 0.3), lam = Vector::Constant(2, -1.2);
  auto S = [](double) { return Matrix::Zero(2, 2); };
  const OdeSolution sol = solve_second_order(S, 0.0, mu, lam, {-1.0, 2.0}, 1e-2);
  for (double u : {-0.737, 0.0, 0.341, 1.9}) {
    CHECK((sol.value(u) - (mu + u * lam)).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK((sol.derivative(u) - lam).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("solve_second_order: cosh and sine oracles") {
  auto Spos = [](double) { return Matrix::Constant(1, 1, 1.0); };
  const OdeSolution c = solve_second_order(Spos, 0.0, Vector::Constant(1, 1.0),
                                           Vector::Zero(1), {0.0, 2.0}, 1e-3);
  CHECK(std::abs(c.value(1.0)[0] - std::cosh(1.0)) < 1e-8);
  CHECK(std::abs(c.derivative(1.0)[0] - std::sinh(1.0)) < 1e-8);

  auto Sneg = [](double) { return Matrix::Constant(1, 1, -1.0); };
  const OdeSolution s = solve_second_order(Sneg, 0.0, Vector::Zero(1),
                                           Vector::Constant(1, 1.0), {0.0, 4.0}, 1e-3);
  CHECK(std::abs(s.value(M_PI)[0]) < 1e-8);
}

TEST_CASE("solve_second_order: order-4 convergence witness against cosh") {
  auto S = [](double) { return Matrix::Constant(1, 1, 1.0); };
  auto max_err = [&](double step) {
    const OdeSolution sol = solve_second_order(S, 0.0, Vector::Constant(1, 1.0),
                                               Vector::Zero(1), {0.0, 1.0}, step);
    double err = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double u = 0.05 * k;
      err = std::max(err, std::abs(sol.value(u)[0] - std::cosh(u)));
    }
    return err;
  };
  const double e1 = max_err(0.05), e2 = max_err(0.025);
  CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("solve_second_order: grid nodes reproduce stored samples exactly") {
  auto S = [](double u) { return Matrix::Constant(1, 1, std::sin(u)); };
  const OdeSolution sol = solve_second_order(S, 0.5, Vector::Constant(1, 1.0),
                                             Vector::Constant(1, 2.0), {-1.0, 1.0}, 0.01);
  const auto& grid = sol.grid();
  for (std::size_t k = 0; k < grid.size(); k += 17) {
    CHECK(sol.value(grid[k]) == sol.values()[k]);
    CHECK(sol.derivative(grid[k]) == sol.derivatives()[k]);
  }
  for (std::size_t k = 1; k < grid.size(); ++k) CHECK(grid[k] > grid[k - 1]);
}

TEST_CASE("solve_second_order: error paths") {
  auto S = [](double) { return Matrix::Zero(1, 1); };
  const Vector z = Vector::Zero(1);
  CHECK_THROWS_AS(solve_second_order(S, 5.0, z, z, {0.0, 1.0}, 1e-2), domain_error);
  CHECK_THROWS_AS(solve_second_order(S, 0.5, z, z, {0.0, 1.0}, -1.0), contract_error);
  auto bad = [](double) {
    return Matrix::Constant(1, 1, std::numeric_limits<double>::quiet_NaN());
  };
  CHECK_THROWS_AS(solve_second_order(bad, 0.0, z, z, {0.0, 1.0}, 1e-2), numeric_error);
}

TEST_CASE("quadrature: polynomial exactness and the arctan oracle") {
  auto zero = [](double) { return Vector::Zero(3); };
  CHECK(quadrature(zero, 0.0, 1.0, 1e-2).lpNorm<Eigen::Infinity>() == 0.0);

  auto lin = [](double u) { return Vector::Constant(1, u); };
  CHECK(std::abs(quadrature(lin, 0.0, 1.0, 1e-2)[0] - 0.5) < 1e-12);
  CHECK(std::abs(quadrature(lin, 1.0, 0.0, 1e-2)[0] + 0.5) < 1e-12);

  auto f = [](double u) { return Vector::Constant(1, 1.0 / (1.0 + u * u)); };
  CHECK(std::abs(quadrature(f, 0.0, 1.0, 1e-3)[0] - M_PI_4) < 1e-10);
}
