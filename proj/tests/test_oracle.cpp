#include <cmath>

#include "doctest.h"
#include "gvar/oracle.hpp"

using namespace gvar;
namespace O = gvar::oracle;

namespace {
const auto h = LambdaSequence::harmonic();
const Function1D tri = PiecewiseLinearPeriodic::triangle();
O::GridSpec grid(int depth) {
  O::GridSpec g;
  g.depth = depth;
  return g;
}
}  // namespace

TEST_CASE("brute assignment") {
  CHECK(O::brute_assignment({1.0, 3.0, 2.0}, h) == doctest::Approx(3.0 + 1.0 + 1.0 / 3.0));
  CHECK(O::brute_assignment({}, h) == 0.0);
  CHECK(O::brute_assignment({-2.0, -1.0}, h) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(O::brute_assignment(std::vector<double>(8, 1.0), h), O::OracleError);
}

TEST_CASE("one-dimensional oracles by hand") {
  CHECK(O::brute_lambda_1d(tri, h, grid(2)) == doctest::Approx(1.5));
  CHECK(O::brute_lambda_1d(PiecewiseLinearPeriodic::constant(3.0), h, grid(3)) == 0.0);
  CHECK(O::brute_wiener_1d(tri, 2.0, 1, grid(2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(O::brute_wiener_1d(tri, 1.0, 2, grid(2)) == doctest::Approx(2.0));
  // Four teeth of height 1 at scale 4 (tooth 0 wraps): eight unit swings.
  const Function1D comb = DyadicComb(4, 0, 4, 1.0);
  CHECK(O::brute_wiener_1d(comb, 2.0, 4, grid(4)) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("matrix orderings") {
  CHECK(O::brute_v12_matrix({{2.0}}, h) == 2.0);
  CHECK(O::brute_v12_matrix({{1.0, 0.0}, {0.0, 1.0}}, h) == doctest::Approx(1.25));
  CHECK_THROWS_AS(O::brute_v12_matrix(std::vector<std::vector<double>>(6, std::vector<double>(6, 1.0)), h),
                  O::OracleError);
}

TEST_CASE("two-dimensional oracles by hand") {
  const TensorSum2D f({{tri, tri}});
  CHECK(O::brute_sharp_v1(f, h, grid(2)) == doctest::Approx(1.5));
  CHECK(O::brute_v12(f, h, grid(1)) == doctest::Approx(2.25));
  CHECK(O::brute_star(f, h, grid(1)) == doctest::Approx(1.0 + 0.5 + 1.0 / 3.0 + 0.25));
  CHECK(O::brute_wiener_sharp_v1(f, 2.0, 1, grid(2)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("grid limits") {
  CHECK_THROWS_AS(grid(7).validate(), O::OracleError);
  O::GridSpec g;
  g.max_rectangles = 5;
  CHECK_THROWS_AS(g.validate(), O::OracleError);
  CHECK_THROWS_AS(O::brute_v12(TensorSum2D({{tri, tri}}), h, grid(4)), O::OracleError);
}
