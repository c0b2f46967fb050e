#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "gvar/constructions.hpp"
#include "gvar/variation.hpp"
#include "gvar/verify.hpp"

using namespace gvar;

namespace {

SelectOptions no_premise() {
  SelectOptions o;
  o.check_premise = false;
  return o;
}

struct CaseA {
  LambdaSequence lambda{case_a_demo_lambda()};
  ExponentSequence p{case_a_demo_p()};
  IndexSelection sel = select_indices(lambda, p, case_a_demo_k(), no_premise());
};

}  // namespace

TEST_CASE("default Theorem 1 parameters have no selection") {
  const auto h = LambdaSequence::harmonic();
  try {
    select_indices(h, ExponentSequence::loglog(), 4);
    FAIL("expected a refusal");
  } catch (const ConstructionError& e) {
    CHECK(std::string(e.what()).find("exponent constraint") != std::string::npos);
  }
}

TEST_CASE("selection refuses a bounded premise") {
  try {
    select_indices(LambdaSequence::harmonic(), ExponentSequence::linear(0.0, 1.0), 2);
    FAIL("expected a refusal");
  } catch (const ConstructionError& e) {
    CHECK(std::string(e.what()).rfind("precondition fails", 0) == 0);
  }
}

TEST_CASE("case-a demo selection") {
  const CaseA a;
  CHECK(a.sel.mode == SelectionMode::case_a);
  CHECK(a.sel.indices() == std::vector<std::uint64_t>{1, 5, 17});
  CHECK(a.sel.entries[2].m.exact == 1500u);
  CHECK(validate_selection(a.sel, a.lambda, a.p).empty());
  for (const auto& e : a.sel.entries) CHECK(e.ratio.log >= e.k * std::log(4.0) - 1e-12);

  const Construction c = build_case_a(a.lambda, a.p, a.sel);
  CHECK(c.term_k == std::vector<int>{2, 3});
  const ConstructionCertificate up = certificate_upper_lambda_sharp(c, a.lambda);
  CHECK(up.holds);
  CHECK(up.total == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(recompute_total(up) == up.total);
  for (const auto& t : up.terms) CHECK(t.value <= std::ldexp(1.0, -t.k) * (1.0 + 1e-12));

  for (int k : c.term_k) {
    const ConstructionCertificate lo = witness_lower_case_a(c, a.p, k);
    CHECK(lo.holds);
    CHECK(lo.total >= lo.bound * (1.0 - 1e-12));
    CHECK(lo.bound >= lo.floor * (1.0 - 1e-12));
    const RowWitness row = witness_row(c, k);
    Witness w;
    w.intervals = row.intervals;
    w.ys = row.ys;
    const double p_k = a.p.value(a.sel.entries[static_cast<std::size_t>(k - 1)].index);
    CHECK(witness_wiener_sharp(c.f, p_k, w) == doctest::Approx(lo.total).epsilon(1e-9));
  }
}

TEST_CASE("selection truncates consistently") {
  const CaseA a;
  const IndexSelection two = select_indices(a.lambda, a.p, 2, no_premise());
  REQUIRE(two.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(two.entries[i].index == a.sel.entries[i].index);
    CHECK(two.entries[i].amplitude == a.sel.entries[i].amplitude);
  }
  const IndexSelection l4 = select_lk(ExponentSequence::linear(0.0, 1.0), 4);
  const IndexSelection l6 = select_lk(ExponentSequence::linear(0.0, 1.0), 6);
  for (std::size_t i = 0; i < 3; ++i) CHECK(l4.entries[i].index == l6.entries[i].index);
}

TEST_CASE("K = 4 upper certificate on a hand-built selection") {
  const auto h = LambdaSequence::harmonic();
  IndexSelection sel;
  sel.mode = SelectionMode::case_a;
  const std::uint64_t ms[] = {2, 8, 64, 4096};
  for (int k = 1; k <= 4; ++k) {
    IndexEntry e;
    e.k = k;
    e.index = static_cast<std::uint64_t>(3 * k);
    e.m.exact = ms[k - 1];
    e.m.log_m = std::log(static_cast<double>(ms[k - 1]));
    e.log_amplitude = -0.5 * (k * std::numbers::ln2 + std::log(h.reciprocal_partial_sum(ms[k - 1])));
    e.amplitude = std::exp(e.log_amplitude);
    sel.entries.push_back(e);
  }
  Construction c;
  c.kind = SelectionMode::case_a;
  c.selection = sel;
  c.term_k = {2, 3, 4};
  const ConstructionCertificate up = certificate_upper_lambda_sharp(c, h);
  CHECK(up.total == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(up.total < 4.0);
  CHECK(up.holds);
  CHECK(recompute_total(up) == up.total);
}

TEST_CASE("case-b demo selection") {
  const auto h = LambdaSequence::harmonic();
  const ExponentSequence p(case_b_demo_p());
  const IndexSelection sel = select_indices(h, p, case_b_demo_k());
  CHECK(sel.mode == SelectionMode::case_b);
  CHECK(sel.indices() == std::vector<std::uint64_t>{4, 44});
  CHECK(sel.k0 == 0);
  const Construction c = build_case_b(h, p, sel);
  CHECK(certificate_upper_lambda_sharp(c, h).holds);
  for (int k : c.term_k) CHECK(witness_lower_case_b(c, p, k).holds);
  CHECK_THROWS_AS(build_case_a(h, p, sel), ConstructionError);
}

TEST_CASE("validation flags a broken selection") {
  const CaseA a;
  IndexSelection bad = a.sel;
  bad.entries[1].index = 2;
  CHECK_FALSE(validate_selection(bad, a.lambda, a.p).empty());
}

TEST_CASE("l_k selection and tents") {
  const auto p = ExponentSequence::linear(0.0, 1.0);
  const IndexSelection sel = select_lk(p, 6);
  CHECK(sel.mode == SelectionMode::theorem2);
  CHECK(sel.indices() == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6});
  CHECK_THROWS_AS(select_lk(ExponentSequence::constant(2.0), 3), ConstructionError);

  const auto h = LambdaSequence::harmonic();
  const Construction r = build_r(h, sel);
  CHECK(r.selection.entries[2].amplitude == doctest::Approx(0.859389).epsilon(1e-6));
  CHECK(r.f.eval(0.75, 0.75) == doctest::Approx(1.0));
  CHECK(r.f.eval(0.0, 0.3) == 0.0);

  const ConstructionCertificate w1 = witness_lower_r(h, sel, 1);
  CHECK(w1.total == doctest::Approx(1.0).epsilon(1e-12));
  double prev = 0.0;
  for (int k = 1; k <= 6; ++k) {
    const ConstructionCertificate w = witness_lower_r(h, sel, k);
    CHECK(w.total >= std::sqrt(h.reciprocal_partial_sum(static_cast<std::uint64_t>(k))) - 1e-12);
    CHECK(w.total > prev);
    CHECK(witness_lower_r_evaluated(r, h, k) == doctest::Approx(w.total).epsilon(1e-12));
    prev = w.total;
  }
  for (std::uint64_t l = 0; l <= 12; ++l) {
    const ConstructionCertificate cw = r_wiener_certificate(h, p, sel, l);
    CHECK(cw.holds);
    CHECK(cw.total <= 4.0 * std::numbers::e);
  }
  CHECK(r_lipschitz_constant(h, sel) > 0.0);
}
