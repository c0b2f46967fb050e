#include <cmath>

#include "doctest.h"
#include "gvar/numeric.hpp"
#include "gvar/sequences.hpp"

using namespace gvar;

TEST_CASE("compensated sum and log helpers") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
  CHECK(log_add(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)));
  CHECK(log_sub(std::log(5.0), std::log(3.0)) == doctest::Approx(std::log(2.0)));
  const double xs[] = {3.0, 4.0};
  CHECK(power_norm(xs, 2.0) == doctest::Approx(5.0));
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("lambda kinds") {
  CHECK(LambdaSequence::harmonic().value(7) == 7.0);
  CHECK(LambdaSequence::harmonic(2.0, 1.0).value(3) == 7.0);
  CHECK(LambdaSequence::power(2.0).value(3) == doctest::Approx(9.0));
  CHECK(LambdaSequence::power_log(0.5).value(3) == doctest::Approx(3.0 / std::sqrt(std::log(4.0))));
  CHECK(LambdaSequence::n_gamma(1.0).gamma(5) == doctest::Approx(1.0 / std::log(7.0)));
  CHECK(LambdaSequence::harmonic().start_flag());
  CHECK_FALSE(LambdaSequence::harmonic(1.0, 1.0).start_flag());
}

TEST_CASE("lambda validation rejects bad tables") {
  CHECK_THROWS_AS(LambdaSequence::table({1.0, 3.0, 2.0}, TableExtension::reject), SequenceError);
  CHECK_THROWS_AS(LambdaSequence::table({0.0, 1.0}, TableExtension::reject), SequenceError);
  const auto t = LambdaSequence::table({1.0, 2.0, 4.0}, TableExtension::reject);
  CHECK(t.max_index() == 3);
  CHECK_THROWS(t.value(4));
  const auto g = LambdaSequence::table({1.0, 2.0, 4.0}, TableExtension::repeat_last_growth);
  CHECK(g.value(5) == doctest::Approx(8.0));
}

TEST_CASE("reciprocal partial sums") {
  const auto h = LambdaSequence::harmonic();
  CHECK(h.reciprocal_partial_sum(1) == 1.0);
  CHECK(h.reciprocal_partial_sum(4) == doctest::Approx(25.0 / 12.0));
  // H_m ~ ln m + gamma + 1/(2m)
  const double m = 1e9;
  const double euler = 0.57721566490153286;
  CHECK(h.reciprocal_partial_sum_log(std::log(m)).linear() ==
        doctest::Approx(std::log(m) + euler + 0.5 / m).epsilon(1e-9));
  const double direct = h.reciprocal_partial_sum(100000);
  CHECK(h.reciprocal_partial_sum_em(100000.0, 1000) == doctest::Approx(direct).epsilon(1e-10));
  const auto pl = LambdaSequence::power_log(0.5);
  CHECK(pl.reciprocal_partial_sum_em(50000.0, 500) ==
        doctest::Approx(pl.reciprocal_partial_sum(50000)).epsilon(1e-9));
}

TEST_CASE("exponent kinds") {
  CHECK(ExponentSequence::constant(2.5).value(9) == 2.5);
  CHECK(ExponentSequence::linear(1.0, 0.5).value(4) == 3.0);
  CHECK(ExponentSequence::loglog().value(1) == doctest::Approx(1.0 + std::log(1.0 + std::log(2.0))));
  CHECK(ExponentSequence::n_over_log(2.0).value(1) == 1.0);
  CHECK(ExponentSequence::n_over_log(2.0).value(63) == doctest::Approx(63.0 / 12.0));
  CHECK(ExponentSequence::constant(3.0).limit() == 3.0);
  CHECK(std::isinf(ExponentSequence::loglog().limit()));
  const auto t = ExponentSequence::table({1.0, 2.0}, true);
  CHECK(t.value(10) == 2.0);
  CHECK_THROWS(ExponentSequence::table({1.0, 2.0}, false).value(3));
  CHECK_THROWS(ExponentSequence::constant(0.5));
}

TEST_CASE("ratio and its argmax") {
  const auto h = LambdaSequence::harmonic();
  const auto p = ExponentSequence::linear(0.0, 1.0);
  // n = 1: m = 2 gives 2 / (3/2) = 4/3.
  CHECK(ratio(h, p, 1, 2).linear() == doctest::Approx(4.0 / 3.0));
  const MOfN r = m_of_n(h, p, 1);
  CHECK(r.m.exact == 2u);
  CHECK(r.endpoint);
  const MOfN e = m_of_n(h, ExponentSequence::loglog(), 12, SearchMode::exhaustive);
  const MOfN a = m_of_n(h, ExponentSequence::loglog(), 12, SearchMode::automatic);
  CHECK(e.ratio.log == doctest::Approx(a.ratio.log));
  const MOfN big = m_of_n(h, ExponentSequence::loglog(), 200);
  CHECK(big.ratio.log > m_of_n(h, ExponentSequence::loglog(), 100).ratio.log);
}

TEST_CASE("condition 2 verdicts") {
  const auto h = LambdaSequence::harmonic();
  const auto bounded = check_condition_2(h, ExponentSequence::linear(0.0, 1.0), 20);
  CHECK(bounded.condition_id == "condition-2");
  CHECK(bounded.verdict == Verdict::bounded_trend);
  CHECK(bounded.sup_observed == doctest::Approx(4.0 / 3.0));
  CHECK(bounded.rows.size() == 20);
  CHECK(check_condition_2(h, ExponentSequence::loglog(), 20).verdict == Verdict::divergent_trend);
}

TEST_CASE("lambda admissibility") {
  CHECK(check_lambda_admissible(LambdaSequence::harmonic(), 1024).verdict == Verdict::divergent_trend);
  CHECK(check_lambda_admissible(LambdaSequence::power(2.0), 1024).verdict == Verdict::bounded_trend);
  LambdaParams bad;
  bad.kind = LambdaKind::table;
  bad.values = {1.0, 2.0, 1.5, 3.0};
  bad.extend = TableExtension::repeat_last_growth;
  const auto r = check_lambda_admissible(LambdaSequence::unchecked(bad), 64);
  CHECK_FALSE(r.invariant_ok);
  CHECK(r.failed_index == 3u);
}

TEST_CASE("cond1 and T1 tables") {
  const auto h = LambdaSequence::harmonic();
  const auto c1 = check_cond1(h, 256);
  CHECK(c1.rows.size() == 256);
  CHECK(c1.rows[0].quantity == doctest::Approx(std::log(2.0)));
  const auto t1 = check_t1_conditions(h, 256, 0.5);
  REQUIRE(t1.size() == 2);
  CHECK(t1[0].condition_id == "T1-1/T1-11");
  CHECK(t1[1].verdict == Verdict::bounded_trend);
  CHECK_THROWS(check_t1_conditions(h, 16, 0.0));
}
