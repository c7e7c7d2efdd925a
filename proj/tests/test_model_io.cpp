#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "planewave/model_io.hpp"
#include "test_util.hpp"

#include <sstream>

using namespace planewave;

TEST_CASE("parse a documented example") {
  std::istringstream in(
      "# a symmetric model\n"
      "n 2\n"
      "family a\n"
      "F 0 -1.5 1.5 0   # row-major\n"
      "B 1 0 0 1\n"
      "tol 1e-9\n");
  const ModelFile mf = parse_model(in);
  CHECK(mf.model.n == 2);
  CHECK(mf.model.family == Family::a);
  CHECK(mf.model.F(0, 1) == -1.5);
  CHECK(mf.model.B(1, 1) == 1.0);
  CHECK(mf.tol == 1e-9);
  CHECK_NOTHROW(mf.model.validate(mf.tol));
}

TEST_CASE("write/parse round trip is exact") {
  pwtest::TestRng rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 4;
    ModelFile mf;
    mf.model = {n, trial % 2 ? Family::b : Family::a, rng.antisymmetric(n),
                rng.symmetric(n)};
    mf.tol = 1e-10;
    std::istringstream in(write_model(mf));
    const ModelFile back = parse_model(in);
    CHECK(back.model.n == mf.model.n);
    CHECK(back.model.family == mf.model.family);
    CHECK((back.model.F - mf.model.F).norm() == 0.0);
    CHECK((back.model.B - mf.model.B).norm() == 0.0);
    CHECK(back.tol == mf.tol);
  }
}

TEST_CASE("malformed inputs") {
  auto expect_parse_error = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_model(in), parse_error);
  };
  expect_parse_error("");                                        // nothing
  expect_parse_error("n 2\nfamily a\nF 0 0 0 0\n");              // missing B
  expect_parse_error("n 2\nfamily c\nF 0 0 0 0\nB 0 0 0 0\n");   // bad family
  expect_parse_error("n 2\nfamily a\nF 0 0 0\nB 0 0 0 0\n");     // short F
  expect_parse_error("n 2\nfamily a\nF 0 0 0 0 9\nB 0 0 0 0\n"); // long F
  expect_parse_error("F 0 0 0 0\nn 2\nfamily a\nB 0 0 0 0\n");   // n after F
  expect_parse_error("n 0\nfamily a\nF\nB\n");                   // bad rank
  expect_parse_error("n 2\nfamily a\nF 0 0 0 0\nB 0 0 0 0\nwhat 1\n");  // unknown key
  expect_parse_error("n 2\nfamily a\nF 0 0 0 0\nB 0 0 0 0\ntol -1\n");  // bad tol
}

TEST_CASE("invariant violations are caught by validate, not the parser") {
  std::istringstream in(
      "n 2\n"
      "family a\n"
      "F 0 1 1 0\n"  // not antisymmetric
      "B 1 0 0 1\n");
  const ModelFile mf = parse_model(in);  // parses fine
  CHECK_THROWS_AS(mf.model.validate(mf.tol), contract_error);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(parse_model_file("/nonexistent/path.pw"), parse_error);
}
