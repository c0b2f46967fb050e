#include <cmath>

#include "doctest.h"
#include "gvar/oracle.hpp"
#include "gvar/variation.hpp"

using namespace gvar;

namespace {
const Function1D tri = PiecewiseLinearPeriodic::triangle();
TensorSum2D tri2() { return TensorSum2D({{tri, tri}}); }
}  // namespace

TEST_CASE("optimal assignment sorts descending") {
  const auto h = LambdaSequence::harmonic();
  CHECK(optimal_assignment({1.0, 3.0, 2.0}, h) == doctest::Approx(3.0 + 1.0 + 1.0 / 3.0));
  CHECK(optimal_assignment({}, h) == 0.0);
  CHECK(optimal_assignment({-1.0, -2.0}, h) == doctest::Approx(-1.0 - 1.0));
}

TEST_CASE("double assignment against all orderings") {
  const auto h = LambdaSequence::harmonic();
  const std::vector<std::vector<double>> m{{1.0, -2.0, 0.5}, {0.25, 3.0, -1.0}, {2.0, 0.0, 1.0}};
  const DoubleAssignment a = double_assignment(m, h, SearchBudget{});
  CHECK(a.exact);
  CHECK(a.value == doctest::Approx(oracle::brute_v12_matrix(m, h)));
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (std::size_t j = 0; j < a.cols.size(); ++j)
      s += m[a.rows[i]][a.cols[j]] / static_cast<double>((i + 1) * (j + 1));
  CHECK(s == doctest::Approx(a.value));
}

TEST_CASE("one-dimensional closed forms") {
  const auto h = LambdaSequence::harmonic();
  SearchBudget b;
  const VariationEstimate t = lambda_variation_1d(tri, h, b);
  CHECK(t.value == doctest::Approx(1.5));
  CHECK(witness_lambda_1d(tri, h, t.witness) == doctest::Approx(t.value));

  const Function1D comb = DyadicComb(3, 1, 3, 0.5);
  const VariationEstimate c = lambda_variation_1d(comb, h, b);
  CHECK(c.mode == EstimateMode::exact_closed_form);
  CHECK(c.value == doctest::Approx(0.5 * (1.0 + 0.5 + 1.0 / 3.0 + 0.25)));
  CHECK(witness_lambda_1d(comb, h, c.witness) == doctest::Approx(c.value));

  const VariationEstimate w = wiener_variation_1d(tri, ExponentSequence::constant(2.0), 1, b);
  CHECK(w.value == doctest::Approx(std::sqrt(2.0)));
  CHECK(w.p == 2.0);
  CHECK(witness_wiener_1d(tri, 2.0, w.witness) == doctest::Approx(w.value));
  const VariationEstimate w1 = wiener_variation_1d(comb, ExponentSequence::constant(1.0), 3, b);
  CHECK(w1.value == doctest::Approx(2.0));
}

TEST_CASE("wiener profile") {
  const WienerProfile prof = wiener_profile(tri, ExponentSequence::constant(2.0), 3, SearchBudget{});
  REQUIRE(prof.per_n.size() == 3);
  CHECK(prof.sup == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("two-dimensional functionals on a product of triangles") {
  const auto h = LambdaSequence::harmonic();
  const TensorSum2D f = tri2();
  SearchBudget b;
  b.grid_depth = 3;
  const VariationEstimate v1 = lambda_v1(f, h, b);
  CHECK(v1.value == doctest::Approx(1.5));
  CHECK(witness_lambda_v1(f, h, v1.witness) == doctest::Approx(v1.value));
  CHECK(lambda_v2(f, h, b).value == doctest::Approx(1.5));
  const VariationEstimate s1 = lambda_sharp_v1(f, h, b);
  CHECK(s1.value == doctest::Approx(1.5));
  CHECK(witness_sharp_v1(f, h, s1.witness) == doctest::Approx(s1.value));
  CHECK(lambda_sharp_v2(f, h, b).value == doctest::Approx(1.5));
  const VariationEstimate v12 = lambda_v12(f, h, b);
  CHECK(v12.value == doctest::Approx(2.25));
  CHECK(witness_v12(f, h, v12.witness) == doctest::Approx(v12.value));
  const VariationEstimate st = lambda_star_v(f, h, b);
  CHECK(st.value >= 1.0 - 1e-12);
  CHECK(witness_star(f, h, st.witness) == doctest::Approx(st.value));
  const VariationEstimate ws = wiener_sharp_v1(f, ExponentSequence::constant(2.0), 1, b);
  CHECK(ws.value == doctest::Approx(std::sqrt(2.0)));
  CHECK(witness_wiener_sharp(f, 2.0, ws.witness) == doctest::Approx(ws.value));
}

TEST_CASE("estimators agree with oracles on a comb product") {
  const auto h = LambdaSequence::harmonic();
  // Piecewise-linear twin: the comb closed form ignores the interval cap.
  const TensorSum2D f({{DyadicComb(3, 1, 3, 1.0).to_piecewise_linear(), PiecewiseLinearPeriodic::triangle()}});
  SearchBudget b;
  b.grid_depth = 3;
  oracle::GridSpec g;
  g.depth = 3;
  g.max_intervals = 3;
  b.max_intervals = 3;
  CHECK(lambda_sharp_v1(f, h, b).value == doctest::Approx(oracle::brute_sharp_v1(f, h, g)));
  // Teeth on the depth-2 grid, so the grid sees every swing.
  const TensorSum2D f2({{DyadicComb(2, 1, 2, 1.0), PiecewiseLinearPeriodic::triangle()}});
  g.depth = 2;
  b.grid_depth = 2;
  CHECK(lambda_v12(f2, h, b).value == doctest::Approx(oracle::brute_v12(f2, h, g)));
}

TEST_CASE("budget validation") {
  SearchBudget b;
  b.grid_depth = 0;
  CHECK_THROWS(lambda_variation_1d(tri, LambdaSequence::harmonic(), b));
  b.grid_depth = 4;
  b.max_intervals = 0;
  CHECK_THROWS(b.validate());
}

TEST_CASE("p-norm in log space") {
  CHECK(std::exp(log_p_norm({3.0, -4.0}, 2.0)) == doctest::Approx(5.0));
  CHECK(std::isinf(log_p_norm({0.0}, 2.0)));
  CHECK(std::exp(log_p_norm({1e300, 1e300}, 1.0)) == doctest::Approx(2e300));
}

TEST_CASE("inequality check on a product of triangles") {
  const auto h = LambdaSequence::harmonic();
  const auto p = ExponentSequence::constant(2.0);
  // LHS <= sqrt(2) on any admissible partition; with upper 1.5 the right side
  // is 1.5 * sup ratio >= 1.5.
  const InequalityReport r = inequality_check_th1(tri2(), h, p, 3, 50, 7, 1.5);
  CHECK(r.trials == 50);
  CHECK(r.ok);
  CHECK(r.max_ratio <= 1.0);
  const InequalityReport r2 = inequality_check_th1(tri2(), h, p, 3, 50, 7, 1.5);
  CHECK(r2.max_ratio == r.max_ratio);
}
