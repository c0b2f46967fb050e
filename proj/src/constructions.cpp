#include "gvar/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gvar/numeric.hpp"

namespace gvar {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kTol = 1e-12;

std::string num(double x) { return format_double(x); }

LogReal partial_sum(const LambdaSequence& lambda, const MValue& m) {
  if (m.exact) return LogReal::from_linear(lambda.reciprocal_partial_sum(*m.exact));
  return lambda.reciprocal_partial_sum_log(m.log_m);
}

/// m > 2^e, exactly when m is known and e < 64.
bool m_above_pow2(const MValue& m, std::int64_t e) {
  if (e < 0) return true;
  if (m.exact && e < 64) return *m.exact > (std::uint64_t{1} << e);
  return m.log_m > static_cast<double>(e) * kLn2 * (1.0 + kTol);
}

/// m <= 2^e.
bool m_at_most_pow2(const MValue& m, std::int64_t e) {
  if (e < 0) return false;
  if (m.exact && e < 64) return *m.exact <= (std::uint64_t{1} << e);
  return m.log_m <= static_cast<double>(e) * kLn2 * (1.0 + kTol);
}

bool m_equal(const MValue& a, const MValue& b) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  return close_rel(a.log_m, b.log_m, 1e-9, 1e-12);
}

std::int64_t idx(const IndexSelection& sel, int k) {
  // n_0 = 0
  if (k <= 0) return 0;
  return static_cast<std::int64_t>(sel.entries.at(static_cast<std::size_t>(k - 1)).index);
}

void fill_amplitude(IndexEntry& e, const LambdaSequence& lambda) {
  const LogReal s = partial_sum(lambda, e.m);
  e.log_amplitude = -0.5 * (e.k * kLn2 + s.log);
  e.amplitude = std::exp(e.log_amplitude);
}

bool case_b_holds(const IndexSelection& sel, int k) {
  const MValue& m = sel.entries[static_cast<std::size_t>(k - 1)].m;
  const std::int64_t nk = idx(sel, k);
  return m_above_pow2(m, nk - idx(sel, k - 1) - 1) && m_at_most_pow2(m, nk);
}

bool case_a_pair_holds(const IndexSelection& sel, int k) {
  const MValue& m = sel.entries[static_cast<std::size_t>(k - 1)].m;
  const std::int64_t prev = idx(sel, k - 1);
  return m_above_pow2(m, 2 * prev) && m_at_most_pow2(m, idx(sel, k) - prev - 1);
}

double c_of(const LambdaSequence& lambda, std::uint64_t k) {
  return std::pow(lambda.reciprocal_partial_sum(k), -0.25);
}

void finish_total(ConstructionCertificate& c) {
  c.total = recompute_total(c);
  c.log_total = std::log(c.total);
}

const IndexEntry& entry(const IndexSelection& sel, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > sel.entries.size()) {
    throw ConstructionError("k = " + std::to_string(k) + " outside the selection (K = " +
                            std::to_string(sel.entries.size()) + ")");
  }
  return sel.entries[static_cast<std::size_t>(k - 1)];
}

}  // namespace

std::string to_string(SelectionMode m) {
  switch (m) {
    case SelectionMode::case_a: return "case-a";
    case SelectionMode::case_b: return "case-b";
    case SelectionMode::theorem2: return "theorem2";
  }
  return "?";
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::lambda_sharp_upper: return "lambda-sharp-upper";
    case CertificateKind::wiener_upper: return "wiener-upper";
    case CertificateKind::lambda_sharp_lower_sum: return "lambda-sharp-lower-sum";
    case CertificateKind::wiener_sharp_lower: return "wiener-sharp-lower";
  }
  return "?";
}

std::vector<std::uint64_t> IndexSelection::indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.index);
  return out;
}

// ---------------------------------------------------------------------------
// index searches

IndexSelection select_indices(const LambdaSequence& lambda, const ExponentSequence& p, int K,
                              const SelectOptions& opts) {
  if (K < 0) throw ConstructionError("K must be nonnegative");
  IndexSelection sel;
  if (K == 0) return sel;

  if (opts.check_premise) {
    const ConditionReport rep = check_condition_2(lambda, p, opts.premise_n_max);
    if (rep.verdict != Verdict::divergent_trend) {
      throw ConstructionError("precondition fails: sup-ratio condition trend is " + to_string(rep.verdict) +
                              " up to n = " + std::to_string(opts.premise_n_max) +
                              " (the construction needs it unbounded)");
    }
  }

  std::uint64_t prev = 0;
  for (int k = 1; k <= K; ++k) {
    std::uint64_t n = k == 1 ? 1 : 3 * prev + 2;
    if (n > opts.search_cap) {
      throw ConstructionError("k = " + std::to_string(k) + ": growth constraint n_k > 3 n_{k-1} + 1 needs n >= " +
                              std::to_string(n) + " beyond search cap " + std::to_string(opts.search_cap));
    }
    if (k > 1) {
      const double need = static_cast<double>(prev);
      while (n <= opts.search_cap && p.value(n) < need) ++n;
      if (n > opts.search_cap) {
        throw ConstructionError("k = " + std::to_string(k) + ": exponent constraint p(n_k) >= n_{k-1} = " +
                                std::to_string(prev) + " unsatisfiable up to search cap " +
                                std::to_string(opts.search_cap) + " (p(cap) = " + num(p.value(opts.search_cap)) +
                                ")");
      }
    }
    const double target = k * std::log(4.0);
    bool found = false;
    for (; n <= opts.search_cap; ++n) {
      if (k > 1 && p.value(n) < static_cast<double>(prev)) continue;
      const MOfN mn = m_of_n(lambda, p, n);
      if (mn.ratio.log >= target) {
        IndexEntry e;
        e.k = k;
        e.index = n;
        e.p = p.value(n);
        e.m = mn.m;
        e.ratio = mn.ratio;
        fill_amplitude(e, lambda);
        sel.entries.push_back(e);
        found = true;
        break;
      }
    }
    if (!found) {
      throw ConstructionError("k = " + std::to_string(k) + ": ratio constraint ratio(n_k) >= 4^" + std::to_string(k) +
                              " not reached up to search cap " + std::to_string(opts.search_cap));
    }
    prev = sel.entries.back().index;
  }

  bool case_a = true;
  for (int k = 2; k <= K; ++k) case_a = case_a && case_a_pair_holds(sel, k);
  if (case_a) {
    sel.mode = SelectionMode::case_a;
  } else {
    sel.mode = SelectionMode::case_b;
    int k0 = K;
    while (k0 > 0 && case_b_holds(sel, k0)) --k0;
    sel.k0 = k0;
    if (k0 + 2 > K) sel.notes.push_back("case b with k0 = " + std::to_string(k0) + ": no terms within K");
  }

  const auto bad = validate_selection(sel, lambda, p);
  if (!bad.empty()) throw ConstructionError("selection failed validation: " + bad.front());
  return sel;
}

IndexSelection select_lk(const ExponentSequence& p, int K, std::uint64_t search_cap) {
  if (K < 0) throw ConstructionError("K must be nonnegative");
  IndexSelection sel;
  sel.mode = SelectionMode::theorem2;
  if (K == 0) return sel;
  if (std::isfinite(p.limit())) {
    throw ConstructionError("p is bounded (limit " + num(p.limit()) + "); the construction needs p(n) -> infinity");
  }
  auto push = [&](int k, std::uint64_t l) {
    IndexEntry e;
    e.k = k;
    e.index = l;
    e.p = p.value(l);
    sel.entries.push_back(e);
  };
  push(1, 1);
  for (int k = 2; k <= K; ++k) {
    std::uint64_t l = sel.entries.back().index + 1;
    if (k < K) {
      const double need = std::log(static_cast<double>(k + 1));
      while (l <= search_cap && p.value(l) < need) ++l;
    }
    if (l > search_cap) {
      throw ConstructionError("k = " + std::to_string(k) + ": p(l) >= ln(k+1) not reached up to search cap " +
                              std::to_string(search_cap));
    }
    push(k, l);
  }
  const double need2 = std::log(2.0);
  if (K >= 2 && p.value(1) < need2) {
    throw ConstructionError("p(1) = " + num(p.value(1)) + " < ln 2, so l_1 = 1 cannot serve k = 2");
  }
  return sel;
}

std::vector<std::string> validate_selection(const IndexSelection& sel, const LambdaSequence& lambda,
                                            const ExponentSequence& p) {
  std::vector<std::string> bad;
  const int K = static_cast<int>(sel.entries.size());
  auto fail = [&](int k, const std::string& what) { bad.push_back("k = " + std::to_string(k) + ": " + what); };

  for (int k = 1; k <= K; ++k) {
    const IndexEntry& e = sel.entries[static_cast<std::size_t>(k - 1)];
    if (e.k != k) fail(k, "entry labelled k = " + std::to_string(e.k));
    if (k > 1 && e.index <= sel.entries[static_cast<std::size_t>(k - 2)].index) fail(k, "indices not increasing");
    if (e.index == 0) fail(k, "index must be positive");
  }
  if (!bad.empty()) return bad;

  if (sel.mode == SelectionMode::theorem2) {
    if (K >= 1 && sel.entries[0].index != 1) fail(1, "l_1 must be 1");
    for (int k = 2; k <= K; ++k) {
      const double pl = p.value(sel.entries[static_cast<std::size_t>(k - 2)].index);
      if (pl < std::log(static_cast<double>(k))) fail(k, "p(l_{k-1}) = " + num(pl) + " < ln k");
    }
    for (const auto& e : sel.entries) {
      if (e.amplitude != 0.0 && !close_rel(e.amplitude, c_of(lambda, static_cast<std::uint64_t>(e.k)), 1e-12)) {
        fail(e.k, "c_k does not match (sum 1/lambda_j)^(-1/4)");
      }
    }
    return bad;
  }

  for (int k = 1; k <= K; ++k) {
    const IndexEntry& e = sel.entries[static_cast<std::size_t>(k - 1)];
    if (e.p != p.value(e.index)) fail(k, "stored p(n_k) differs from p");
    // m(n_k) is recomputed, the ratio is rebuilt from lambda and p directly.
    const MOfN mn = m_of_n(lambda, p, e.index);
    if (!m_equal(mn.m, e.m)) fail(k, "m(n_k) differs from a fresh argmax");
    if (e.m.log_m < 0.0 || !m_at_most_pow2(e.m, static_cast<std::int64_t>(e.index))) {
      fail(k, "m(n_k) outside [1, 2^n_k]");
    } else {
      const LogReal r = ratio_log_m(lambda, p, e.index, e.m.log_m);
      if (!close_rel(r.log, e.ratio.log, 1e-9, 1e-12)) fail(k, "stored ratio differs from a fresh evaluation");
      if (r.log < k * std::log(4.0) * (1.0 - kTol)) fail(k, "ratio(n_k) = " + num(r.linear()) + " < 4^k");
    }
    const LogReal s = partial_sum(lambda, e.m);
    const double log_amp = -0.5 * (k * kLn2 + s.log);
    if (!close_rel(e.log_amplitude, log_amp, 1e-12, 1e-12)) fail(k, "amplitude differs from (2^k S(m))^(-1/2)");
    if (k > 1) {
      const auto prev = static_cast<double>(sel.entries[static_cast<std::size_t>(k - 2)].index);
      if (e.p < prev) fail(k, "p(n_k) = " + num(e.p) + " < n_{k-1}");
      if (static_cast<double>(e.index) <= 3.0 * prev + 1.0) fail(k, "n_k <= 3 n_{k-1} + 1");
    }
  }
  if (sel.mode == SelectionMode::case_a) {
    for (int k = 2; k <= K; ++k) {
      if (!case_a_pair_holds(sel, k)) fail(k, "2^{2 s_{k-1}} < m(s_k) <= 2^{s_k - s_{k-1} - 1} fails");
    }
  } else {
    if (sel.k0 < 0 || sel.k0 > K) fail(sel.k0, "k0 out of range");
    for (int k = sel.k0 + 1; k <= K; ++k) {
      if (!case_b_holds(sel, k)) fail(k, "2^{n_k - n_{k-1} - 1} < m(n_k) <= 2^n_k fails above k0");
    }
  }
  return bad;
}

// ---------------------------------------------------------------------------
// builders

Construction build_case_a(const LambdaSequence& lambda, const ExponentSequence& p, const IndexSelection& sel) {
  if (sel.mode != SelectionMode::case_a) throw ConstructionError("build_case_a needs a case-a selection");
  const auto bad = validate_selection(sel, lambda, p);
  if (!bad.empty()) throw ConstructionError("invalid selection: " + bad.front());
  Construction c;
  c.kind = SelectionMode::case_a;
  c.selection = sel;
  std::vector<TensorTerm> terms;
  for (int k = 2; k <= static_cast<int>(sel.size()); ++k) {
    const IndexEntry& e = entry(sel, k);
    const IndexEntry& prev = entry(sel, k - 1);
    if (e.index > static_cast<std::uint64_t>(DyadicRational::kMaxExp)) {
      throw ConstructionError("k = " + std::to_string(k) + ": scale s_k = " + std::to_string(e.index) +
                              " exceeds 62, the comb cannot be represented");
    }
    if (!e.m.exact || !prev.m.exact) throw ConstructionError("m(s_k) exceeds 64 bits");
    const DyadicComb comb(static_cast<int>(e.index), *prev.m.exact, *e.m.exact, e.amplitude);
    terms.push_back({comb, comb});
    c.term_k.push_back(k);
  }
  c.f = TensorSum2D(std::move(terms));
  return c;
}

Construction build_case_b(const LambdaSequence& lambda, const ExponentSequence& p, const IndexSelection& sel) {
  if (sel.mode != SelectionMode::case_b) throw ConstructionError("build_case_b needs a case-b selection");
  const auto bad = validate_selection(sel, lambda, p);
  if (!bad.empty()) throw ConstructionError("invalid selection: " + bad.front());
  Construction c;
  c.kind = SelectionMode::case_b;
  c.selection = sel;
  std::vector<TensorTerm> terms;
  for (int k = sel.k0 + 2; k <= static_cast<int>(sel.size()); ++k) {
    const std::int64_t nk = idx(sel, k);
    if (nk > DyadicRational::kMaxExp) {
      throw ConstructionError("k = " + std::to_string(k) + ": scale n_k = " + std::to_string(nk) +
                              " exceeds 62, the comb cannot be represented");
    }
    const std::int64_t lo = idx(sel, k - 1) - idx(sel, k - 2);
    const std::int64_t hi = nk - idx(sel, k - 1) - 1;
    const DyadicComb comb(static_cast<int>(nk), std::uint64_t{1} << lo, std::uint64_t{1} << hi,
                          entry(sel, k).amplitude);
    terms.push_back({comb, comb});
    c.term_k.push_back(k);
  }
  c.f = TensorSum2D(std::move(terms));
  return c;
}

Construction build_r(const LambdaSequence& lambda, const IndexSelection& sel) {
  if (sel.mode != SelectionMode::theorem2) throw ConstructionError("build_r needs a theorem2 selection");
  Construction c;
  c.kind = SelectionMode::theorem2;
  c.selection = sel;
  std::vector<TensorTerm> terms;
  for (auto& e : c.selection.entries) {
    const int l = static_cast<int>(e.index);
    if (l < 1 || l + 1 > DyadicRational::kMaxExp) {
      throw ConstructionError("l_k = " + std::to_string(e.index) + " outside [1, 61]");
    }
    e.amplitude = c_of(lambda, static_cast<std::uint64_t>(e.k));
    e.log_amplitude = std::log(e.amplitude);
    std::vector<DyadicRational> bp{DyadicRational{}, DyadicRational{1, l}, DyadicRational{3, l + 1}};
    std::vector<double> vals{0.0, 0.0, e.amplitude};
    if (l >= 2) {
      bp.emplace_back(1, l - 1);
      vals.push_back(0.0);
    }
    const PiecewiseLinearPeriodic tent(std::move(bp), std::move(vals));
    terms.push_back({tent, tent});
    c.term_k.push_back(e.k);
  }
  c.f = TensorSum2D(std::move(terms));
  return c;
}

// ---------------------------------------------------------------------------
// certificates

double recompute_total(const ConstructionCertificate& c) {
  std::vector<double> v;
  v.reserve(c.terms.size());
  for (const auto& t : c.terms) v.push_back(t.value);
  if (c.formula_id == "upper-4-sum") return 4.0 * compensated_sum(v);
  if (c.formula_id == "p-norm") return power_norm(v, c.p);
  if (c.formula_id == "sum") return compensated_sum(v);
  if (c.formula_id == "single") {
    if (v.size() != 1) throw ConstructionError("single-term certificate with " + std::to_string(v.size()) + " terms");
    return v.front();
  }
  throw ConstructionError("unknown certificate formula '" + c.formula_id + "'");
}

ConstructionCertificate witness_lower_case_a(const Construction& c, const ExponentSequence& p, int k) {
  if (c.kind != SelectionMode::case_a) throw ConstructionError("witness_lower_case_a needs a case-a construction");
  if (k < 2) throw ConstructionError("the construction starts at k = 2");
  const IndexEntry& e = entry(c.selection, k);
  const IndexEntry& prev = entry(c.selection, k - 1);
  const double pk = p.value(e.index);
  double log_count = 0.0;
  if (e.m.exact && prev.m.exact) {
    log_count = std::log(static_cast<double>(*e.m.exact - *prev.m.exact));
  } else {
    log_count = log_sub(e.m.log_m, prev.m.log_m);
  }
  ConstructionCertificate cert;
  cert.kind = CertificateKind::wiener_sharp_lower;
  cert.formula_id = "single";
  cert.p = pk;
  const double log_value = 2.0 * e.log_amplitude + log_count / pk;
  cert.terms.push_back({k, std::exp(log_value), log_value});
  finish_total(cert);
  cert.log_total = log_value;
  const double log_c = (log_count - e.m.log_m) / pk;
  cert.constant = std::exp(log_c);
  cert.bound = std::exp(log_c + e.ratio.log - k * kLn2);
  cert.floor = std::exp(log_c + k * kLn2);
  cert.holds = log_value >= std::log(cert.bound) - 1e-12 && cert.bound >= cert.floor * (1.0 - kTol);
  cert.note = "h_k^2 (m(s_k) - m(s_{k-1}))^(1/p(s_k)) = c ratio(s_k) / 2^k >= c 2^k";
  return cert;
}

ConstructionCertificate witness_lower_case_b(const Construction& c, const ExponentSequence& p, int k) {
  if (c.kind != SelectionMode::case_b) throw ConstructionError("witness_lower_case_b needs a case-b construction");
  if (k < c.selection.k0 + 2) {
    throw ConstructionError("the construction starts at k = k0 + 2 = " + std::to_string(c.selection.k0 + 2));
  }
  const IndexEntry& e = entry(c.selection, k);
  const double pk = p.value(e.index);
  const std::int64_t a = idx(c.selection, k) - idx(c.selection, k - 1);
  const std::int64_t b = idx(c.selection, k - 1) - idx(c.selection, k - 2);
  // 2^{a-1} - 2^b
  const double log_count = (a - 1) * kLn2 + std::log1p(-std::exp2(static_cast<double>(b - a + 1)));
  ConstructionCertificate cert;
  cert.kind = CertificateKind::wiener_sharp_lower;
  cert.formula_id = "single";
  cert.p = pk;
  const double log_value = 2.0 * e.log_amplitude + log_count / pk;
  cert.terms.push_back({k, std::exp(log_value), log_value});
  finish_total(cert);
  cert.log_total = log_value;
  const double log_first = std::log(0.25) + 2.0 * e.log_amplitude + a * kLn2 / pk;
  cert.bound = std::exp(log_first);
  const double log_c = std::log(0.25) - static_cast<double>(idx(c.selection, k - 1)) * kLn2 / pk;
  cert.constant = std::exp(log_c);
  const double log_mid = log_c + e.ratio.log - k * kLn2;
  cert.floor = std::exp(log_c + k * kLn2);
  cert.holds = log_value >= log_first - 1e-12 && log_first >= log_mid - 1e-12 &&
               log_mid >= log_c + k * kLn2 - 1e-12;
  cert.note = "d_k^2 (2^{n_k-n_{k-1}-1} - 2^{n_{k-1}-n_{k-2}})^(1/p) >= d_k^2 2^{(n_k-n_{k-1})/p} / 4 >= c ratio / 2^k >= c 2^k";
  return cert;
}

RowWitness witness_row(const Construction& c, int k, std::size_t limit) {
  const IndexSelection& sel = c.selection;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  int s = 0;
  if (c.kind == SelectionMode::case_a) {
    if (k < 2) throw ConstructionError("the construction starts at k = 2");
    const IndexEntry& e = entry(sel, k);
    const IndexEntry& prev = entry(sel, k - 1);
    if (!e.m.exact || !prev.m.exact) throw ConstructionError("m(s_k) exceeds 64 bits");
    lo = *prev.m.exact;
    hi = *e.m.exact;
    s = static_cast<int>(e.index);
  } else if (c.kind == SelectionMode::case_b) {
    if (k < sel.k0 + 2) throw ConstructionError("the construction starts at k = k0 + 2");
    s = static_cast<int>(idx(sel, k));
    lo = std::uint64_t{1} << (idx(sel, k - 1) - idx(sel, k - 2));
    hi = std::uint64_t{1} << (s - idx(sel, k - 1) - 1);
  } else {
    throw ConstructionError("witness_row needs a case-a or case-b construction");
  }
  if (s > DyadicRational::kMaxExp) throw ConstructionError("scale exceeds 62");
  if (hi - lo > limit) {
    throw ConstructionError("witness has " + std::to_string(hi - lo) + " intervals, more than " + std::to_string(limit));
  }
  RowWitness w;
  for (std::uint64_t j = lo; j < hi; ++j) {
    const DyadicRational a(static_cast<std::int64_t>(2 * j - 1), s);
    const DyadicRational b(static_cast<std::int64_t>(2 * j), s);
    w.intervals.push_back(Interval::dyadic(a, b));
    w.ys.push_back(b.to_double());
  }
  return w;
}

ConstructionCertificate certificate_upper_lambda_sharp(const Construction& c, const LambdaSequence& lambda) {
  if (c.kind == SelectionMode::theorem2) {
    throw ConstructionError("the lambda-sharp upper certificate applies to case-a and case-b constructions only");
  }
  ConstructionCertificate cert;
  cert.kind = CertificateKind::lambda_sharp_upper;
  cert.formula_id = "upper-4-sum";
  cert.bound = 4.0;
  bool terms_ok = true;
  for (int k : c.term_k) {
    const IndexEntry& e = entry(c.selection, k);
    LogReal s;
    if (c.kind == SelectionMode::case_a) {
      s = partial_sum(lambda, e.m);
    } else {
      const std::int64_t teeth_exp = idx(c.selection, k) - idx(c.selection, k - 1) - 1;
      MValue t;
      t.log_m = static_cast<double>(teeth_exp) * kLn2;
      if (teeth_exp < 64) t.exact = std::uint64_t{1} << teeth_exp;
      s = partial_sum(lambda, t);
    }
    const double log_term = 2.0 * e.log_amplitude + s.log;
    cert.terms.push_back({k, std::exp(log_term), log_term});
    terms_ok = terms_ok && log_term <= -k * kLn2 + 1e-12;
  }
  finish_total(cert);
  cert.floor = 4.0 * (0.5 - std::ldexp(1.0, -(c.term_k.empty() ? 1 : c.term_k.back())));
  cert.holds = terms_ok && cert.total < cert.bound;
  cert.note = "4 sum_k amp_k^2 sum_{j<=m_k} 1/lambda_j = 4 sum_k 2^-k < 4";
  return cert;
}

ConstructionCertificate witness_lower_r(const LambdaSequence& lambda, const IndexSelection& sel, int k) {
  if (sel.mode != SelectionMode::theorem2) throw ConstructionError("witness_lower_r needs a theorem2 selection");
  entry(sel, k);
  ConstructionCertificate cert;
  cert.kind = CertificateKind::lambda_sharp_lower_sum;
  cert.formula_id = "sum";
  for (int j = 1; j <= k; ++j) {
    const auto uj = static_cast<std::uint64_t>(j);
    const double c2 = 1.0 / std::sqrt(lambda.reciprocal_partial_sum(uj));
    const double v = c2 / lambda.value(uj);
    cert.terms.push_back({j, v, std::log(v)});
  }
  finish_total(cert);
  cert.bound = std::sqrt(lambda.reciprocal_partial_sum(static_cast<std::uint64_t>(k)));
  cert.floor = cert.bound;
  cert.holds = cert.total >= cert.bound;
  cert.note = "sum_{j<=k} c_j^2 / lambda_j >= c_k^2 sum_{j<=k} 1/lambda_j = (sum_{j<=k} 1/lambda_j)^(1/2)";
  return cert;
}

double witness_lower_r_evaluated(const Construction& c, const LambdaSequence& lambda, int k) {
  if (c.kind != SelectionMode::theorem2) throw ConstructionError("witness_lower_r_evaluated needs build_r output");
  std::vector<double> v;
  for (int j = 1; j <= k; ++j) {
    const int l = static_cast<int>(entry(c.selection, j).index);
    const DyadicRational peak(3, l + 1);
    const double inc = increment_x(c.f, Interval::dyadic(DyadicRational{1, l}, peak), peak.to_double());
    v.push_back(std::abs(inc) / lambda.value(static_cast<std::uint64_t>(j)));
  }
  return compensated_sum(v);
}

ConstructionCertificate r_wiener_certificate(const LambdaSequence& lambda, const ExponentSequence& p,
                                             const IndexSelection& sel, std::uint64_t l) {
  if (sel.mode != SelectionMode::theorem2) throw ConstructionError("r_wiener_certificate needs a theorem2 selection");
  if (sel.entries.empty()) throw ConstructionError("empty selection");
  const int K = static_cast<int>(sel.size());
  // l_{k-1} <= l < l_k with l_0 = 0; past l_K only K terms exist.
  int k = 1;
  while (k <= K && sel.entries[static_cast<std::size_t>(k - 1)].index <= l) ++k;
  k = std::min(k, K);
  ConstructionCertificate cert;
  cert.kind = CertificateKind::wiener_upper;
  cert.formula_id = k == 1 ? "single" : "p-norm";
  cert.p = l >= 1 ? p.value(l) : 1.0;
  for (int j = 1; j <= k; ++j) {
    const double v = 2.0 / std::sqrt(lambda.reciprocal_partial_sum(static_cast<std::uint64_t>(j)));
    cert.terms.push_back({j, v, std::log(v)});
  }
  finish_total(cert);
  if (k == 1) {
    cert.bound = 2.0;
  } else {
    const double p_prev = p.value(sel.entries[static_cast<std::size_t>(k - 2)].index);
    cert.bound = 2.0 * std::pow(static_cast<double>(k), 1.0 / p_prev);
  }
  cert.floor = 4.0 * std::numbers::e;
  cert.constant = static_cast<double>(k);
  cert.holds = cert.total <= cert.bound * (1.0 + kTol) && cert.bound <= cert.floor * (1.0 + kTol);
  cert.note = "(sum_{j<=k} (2 c_j^2)^p(l))^(1/p(l)) <= 2 k^(1/p(l_{k-1})) <= 4 k^(1/ln k) = 4e";
  return cert;
}

double r_lipschitz_constant(const LambdaSequence& lambda, const IndexSelection& sel) {
  std::vector<double> v;
  for (const auto& e : sel.entries) {
    const double ck = c_of(lambda, static_cast<std::uint64_t>(e.k));
    v.push_back(std::ldexp(ck * ck, static_cast<int>(e.index) + 1));
  }
  return compensated_sum(v);
}

}  // namespace gvar
