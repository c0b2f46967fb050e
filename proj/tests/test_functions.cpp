#include "doctest.h"
#include "gvar/dyadic.hpp"
#include "gvar/functions.hpp"

using namespace gvar;

namespace {
DyadicRational d(std::int64_t n, int e) { return {n, e}; }
}  // namespace

TEST_CASE("dyadic rationals") {
  CHECK(d(2, 2) == d(1, 1));
  CHECK(d(1, 1).num() == 1);
  CHECK(d(3, 2) + d(1, 2) == DyadicRational::integer(1));
  CHECK(d(-1, 2).mod1() == d(3, 2));
  CHECK(d(-1, 2).floor() == -1);
  CHECK(d(1, 3) < d(1, 2));
  CHECK(DyadicRational::from_double(0.375) == d(3, 3));
  CHECK_THROWS_AS(DyadicRational::from_double(1e-30), DyadicError);
  CHECK_THROWS_AS(d(1, 63), DyadicError);
  CHECK(d(5, 3).to_string() == "5/2^3");
}

TEST_CASE("piecewise linear periodic") {
  const auto t = PiecewiseLinearPeriodic::triangle();
  CHECK(t.eval(0.25) == doctest::Approx(0.5));
  CHECK(t.eval(0.75) == doctest::Approx(0.5));
  CHECK(t.eval(1.25) == doctest::Approx(0.5));
  CHECK(t.eval(-0.25) == doctest::Approx(0.5));
  CHECK(t.eval(d(1, 1)) == 1.0);
  CHECK(PiecewiseLinearPeriodic::constant(2.0).eval(0.3) == 2.0);
  CHECK_THROWS_AS(PiecewiseLinearPeriodic({d(1, 1), d(1, 2)}, {0.0, 1.0}), FunctionError);
  CHECK_THROWS_AS(PiecewiseLinearPeriodic({d(0, 0), d(1, 0)}, {0.0, 1.0}), FunctionError);
  CHECK_THROWS_AS(PiecewiseLinearPeriodic({d(0, 0)}, {0.0, 1.0}), FunctionError);
}

TEST_CASE("dyadic comb") {
  const DyadicComb c(3, 1, 3, 2.0);
  CHECK(c.teeth() == 2);
  CHECK(c.eval(2.0 / 8.0) == doctest::Approx(2.0));
  CHECK(c.eval(3.0 / 8.0) == doctest::Approx(0.0));
  CHECK(c.eval(4.0 / 8.0) == doctest::Approx(2.0));
  CHECK(c.eval(0.0) == 0.0);
  CHECK(c.eval(6.0 / 8.0) == 0.0);
  CHECK(c.eval(d(5, 4)) == doctest::Approx(1.0));
  const auto pl = c.to_piecewise_linear();
  for (int i = 0; i < 64; ++i) CHECK(pl.eval(i / 64.0) == doctest::Approx(c.eval(i / 64.0)));
  CHECK_THROWS_AS(DyadicComb(0, 0, 1, 1.0), FunctionError);
  CHECK_THROWS_AS(DyadicComb(63, 0, 1, 1.0), FunctionError);
  CHECK_THROWS_AS(DyadicComb(3, 2, 2, 1.0), FunctionError);
  CHECK_THROWS_AS(DyadicComb(3, 0, 5, 1.0), FunctionError);
  CHECK_THROWS(DyadicComb(20, 1, 100000, 1.0).to_piecewise_linear(4096));
}

TEST_CASE("function wrapper") {
  const Function1D f = DyadicComb(4, 1, 4, 0.5);
  CHECK(f.is_comb());
  CHECK(f.sup_norm() == doctest::Approx(0.5));
  const SwingSummary s = f.swings();
  CHECK(s.count == 6);
  REQUIRE(s.uniform_height);
  CHECK(*s.uniform_height == doctest::Approx(0.5));
  CHECK(f.scaled(2.0).sup_norm() == doctest::Approx(1.0));
  CHECK(f.increment(Interval::dyadic(d(1, 4), d(1, 3))) == doctest::Approx(0.5));
  const auto bps = f.breakpoints();
  REQUIRE(bps);
  CHECK(bps->size() >= 7);

  const Function1D g = PiecewiseLinearPeriodic::triangle();
  CHECK(g.swings().count == 2);
  CHECK(g.increment(Interval::real(0.0, 0.5)) == doctest::Approx(1.0));
}

TEST_CASE("cyclic partitions") {
  const CyclicPartition p({0.1, 0.4, 0.9});
  CHECK(p.min_gap() == doctest::Approx(0.2));
  const auto iv = p.intervals();
  REQUIRE(iv.size() == 3);
  CHECK(iv[2].length() == doctest::Approx(0.2));
  CHECK_THROWS_AS(CyclicPartition({0.4, 0.1}), FunctionError);
  CHECK_THROWS_AS(CyclicPartition({0.1, 1.0}), FunctionError);
}

TEST_CASE("tensor sums") {
  const TensorSum2D f({{PiecewiseLinearPeriodic::triangle(), PiecewiseLinearPeriodic::triangle()},
                       {DyadicComb(2, 0, 2, 1.0), PiecewiseLinearPeriodic::constant(1.0)}});
  CHECK(f.eval(0.5, 0.5) == doctest::Approx(1.0 + DyadicComb(2, 0, 2, 1.0).eval(0.5)));
  const Rectangle r{Interval::real(0.0, 0.5), Interval::real(0.0, 0.5)};
  const double four = f.eval(0.0, 0.0) - f.eval(0.0, 0.5) - f.eval(0.5, 0.0) + f.eval(0.5, 0.5);
  CHECK(rect_increment(f, r) == doctest::Approx(four));
  CHECK(increment_x(f, Interval::real(0.0, 0.5), 0.25) ==
        doctest::Approx(f.eval(0.5, 0.25) - f.eval(0.0, 0.25)));
  CHECK(increment_y(f, 0.25, Interval::real(0.0, 0.5)) ==
        doctest::Approx(f.eval(0.25, 0.5) - f.eval(0.25, 0.0)));
  CHECK(f.transposed().eval(0.3, 0.7) == doctest::Approx(f.eval(0.7, 0.3)));
  CHECK(f.scaled(-2.0).eval(0.3, 0.7) == doctest::Approx(-2.0 * f.eval(0.3, 0.7)));
}
