#include "gvar/variation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "gvar/numeric.hpp"

namespace gvar {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxDepth = 12;
constexpr int kWienerDepthCap = 9;
constexpr std::size_t kBreakpointLimit = 4096;
constexpr double kMaskDpOps = 3e8;
constexpr std::uint64_t kListLimit = 8192;

using Points = std::vector<DyadicRational>;

const DyadicRational kOne = DyadicRational::integer(1);

void add_breakpoints(std::set<DyadicRational>& s, const Function1D& f) {
  if (auto bp = f.breakpoints(kBreakpointLimit)) {
    s.insert(bp->begin(), bp->end());
    return;
  }
  // Too many teeth to list: keep the first tooth so the peak value is seen.
  const DyadicComb& c = *f.comb();
  const auto twoj = static_cast<std::int64_t>(2 * c.j_lo());
  for (std::int64_t d : {-1, 0, 1}) s.insert(DyadicRational(twoj + d, c.s()).mod1());
}

/// Dyadic grid at `depth`, plus breakpoints and extras, sorted in [0, 1).
/// `closed` appends the point 1 (intervals inside [0, 1]).
Points make_points(int depth, const std::vector<const Function1D*>& fs, bool include_bp, const Points& extra,
                   bool closed) {
  std::set<DyadicRational> s;
  for (std::int64_t k = 0; k < (std::int64_t{1} << depth); ++k) s.insert(DyadicRational(k, depth));
  if (include_bp) {
    for (const auto* f : fs) add_breakpoints(s, *f);
  }
  for (const auto& e : extra) s.insert(e.mod1());
  Points out(s.begin(), s.end());
  if (closed) out.push_back(kOne);
  return out;
}

std::vector<double> to_doubles(const Points& pts) {
  std::vector<double> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.to_double());
  return out;
}

std::vector<const Function1D*> us_of(const TensorSum2D& f) {
  std::vector<const Function1D*> out;
  for (const auto& t : f.terms()) out.push_back(&t.u);
  return out;
}

std::vector<const Function1D*> vs_of(const TensorSum2D& f) {
  std::vector<const Function1D*> out;
  for (const auto& t : f.terms()) out.push_back(&t.v);
  return out;
}

/// table[k][i] = fs[k](pts[i]) on the exact path.
std::vector<std::vector<double>> sample(const std::vector<const Function1D*>& fs, const Points& pts) {
  std::vector<std::vector<double>> out(fs.size(), std::vector<double>(pts.size()));
  for (std::size_t k = 0; k < fs.size(); ++k) {
    for (std::size_t i = 0; i < pts.size(); ++i) out[k][i] = fs[k]->eval(pts[i]);
  }
  return out;
}

Interval seg(const Points& pts, std::size_t i, std::size_t j) { return Interval::dyadic(pts[i], pts[j]); }

double log_of(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

std::vector<double> inverse_weights(const LambdaSequence& lambda, std::size_t k) {
  if (auto cap = lambda.max_index()) k = std::min<std::size_t>(k, *cap);
  std::vector<double> w(k);
  for (std::size_t r = 0; r < k; ++r) w[r] = 1.0 / lambda.value(r + 1);
  return w;
}

// ---------------------------------------------------------------------------
// Best collection of at most K nonoverlapping intervals on a point sequence,
// with the rank (lambda index) of every interval chosen by the DP itself.

struct Collection {
  double value = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> ivs;
};

template <class Weight>
Collection best_collection(std::size_t g, const Weight& weight, const std::vector<double>& w) {
  const std::size_t k = w.size();
  const std::size_t masks = std::size_t{1} << k;
  struct Parent {
    std::uint32_t i;
    std::uint32_t mask;
    bool take;
  };
  std::vector<double> dp(g * masks, kNegInf);
  std::vector<Parent> par(g * masks, Parent{0, 0, false});
  auto at = [masks](std::size_t i, std::size_t m) { return i * masks + m; };
  dp[at(0, 0)] = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t m = 0; m < masks; ++m) {
      const double cur = dp[at(i, m)];
      if (cur == kNegInf) continue;
      if (i + 1 < g && cur > dp[at(i + 1, m)]) {
        dp[at(i + 1, m)] = cur;
        par[at(i + 1, m)] = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(m), false};
      }
      if (m + 1 == masks) continue;
      for (std::size_t j = i + 1; j < g; ++j) {
        const double a = weight(i, j);
        if (a <= 0.0) continue;
        for (std::size_t r = 0; r < k; ++r) {
          if (m & (std::size_t{1} << r)) continue;
          const std::size_t m2 = m | (std::size_t{1} << r);
          const double cand = cur + w[r] * a;
          if (cand > dp[at(j, m2)]) {
            dp[at(j, m2)] = cand;
            par[at(j, m2)] = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(m), true};
          }
        }
      }
    }
  }
  std::size_t best_m = 0;
  for (std::size_t m = 0; m < masks; ++m) {
    if (dp[at(g - 1, m)] > dp[at(g - 1, best_m)]) best_m = m;
  }
  Collection out;
  out.value = dp[at(g - 1, best_m)];
  std::size_t i = g - 1, m = best_m;
  while (!(i == 0 && m == 0)) {
    const Parent p = par[at(i, m)];
    if (p.take) out.ivs.emplace_back(p.i, i);
    i = p.i;
    m = p.mask;
  }
  std::reverse(out.ivs.begin(), out.ivs.end());
  return out;
}

/// Indices of the turning points of a sampled sequence (endpoints kept).
std::vector<std::size_t> turning_points(const std::vector<double>& v) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i == 0 || i + 1 == v.size()) {
      idx.push_back(i);
      continue;
    }
    const double a = v[i] - v[idx.back()];
    const double b = v[i + 1] - v[i];
    if (a == 0.0) continue;
    if (b == 0.0 || (a > 0.0) != (b > 0.0)) idx.push_back(i);
  }
  return idx;
}

// Orders a collection by increment magnitude, descending, and sums it.
struct Ordered {
  double value = 0.0;
  std::vector<std::size_t> order;
};

Ordered order_desc(const std::vector<double>& mags, const LambdaSequence& lambda) {
  Ordered out;
  out.order.resize(mags.size());
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) { return mags[a] > mags[b]; });
  CompensatedSum s;
  for (std::size_t r = 0; r < out.order.size(); ++r) s.add(mags[out.order[r]] / lambda.value(r + 1));
  out.value = s.value();
  return out;
}

// ---------------------------------------------------------------------------
// Anchored cyclic DP: max over cyclic partitions (subsets of the points, gaps
// >= gap including the wrap) of sum |incr|^p. weight(i, j), i < j, is the
// magnitude for both (x_i, x_j) and the wrap (x_j, x_i + 1).

struct Cyclic {
  double log_value = kNegInf;
  std::vector<std::size_t> pts;
};

template <class Weight>
Cyclic best_cyclic(const std::vector<double>& xs, const Weight& weight, double p, double gap) {
  const std::size_t g = xs.size();
  const double tol = 1e-15;
  auto fits = [&](double len) { return len >= gap * (1.0 - tol); };
  std::vector<double> mat(g * g, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i + 1; j < g; ++j) {
      const double d = xs[j] - xs[i];
      if (!fits(d) && !fits(1.0 - d)) continue;
      mat[i * g + j] = weight(i, j);
      scale = std::max(scale, mat[i * g + j]);
    }
  }
  Cyclic out;
  out.pts = {0};
  if (scale == 0.0 || g == 0) return out;
  for (double& m : mat) m = std::pow(m / scale, p);

  double best_total = 0.0;
  std::vector<double> best(g);
  std::vector<std::size_t> par(g);
  for (std::size_t a = 0; a < g; ++a) {
    std::fill(best.begin(), best.end(), kNegInf);
    best[a] = 0.0;
    double anchor_best = 0.0;
    std::size_t anchor_last = a;
    for (std::size_t j = a + 1; j < g; ++j) {
      for (std::size_t i = a; i < j; ++i) {
        if (best[i] == kNegInf || !fits(xs[j] - xs[i])) continue;
        const double cand = best[i] + mat[i * g + j];
        if (cand > best[j]) {
          best[j] = cand;
          par[j] = i;
        }
      }
      if (best[j] == kNegInf || !fits(xs[a] + 1.0 - xs[j])) continue;
      const double total = best[j] + mat[a * g + j];
      if (total > anchor_best) {
        anchor_best = total;
        anchor_last = j;
      }
    }
    if (anchor_best > best_total) {
      best_total = anchor_best;
      out.pts.clear();
      for (std::size_t j = anchor_last; j != a; j = par[j]) out.pts.push_back(j);
      out.pts.push_back(a);
      std::reverse(out.pts.begin(), out.pts.end());
    }
  }
  if (best_total > 0.0) out.log_value = std::log(scale) + std::log(best_total) / p;
  return out;
}

std::vector<Interval> cyclic_intervals(const Points& pts, const std::vector<std::size_t>& idx) {
  std::vector<Interval> out;
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) out.push_back(seg(pts, idx[k], idx[k + 1]));
  out.push_back(Interval::dyadic(pts[idx.back()], pts[idx.front()] + kOne));
  return out;
}

VariationEstimate finish(std::string name, double value, EstimateMode mode, Witness w) {
  VariationEstimate e;
  e.functional = std::move(name);
  e.value = value;
  e.log_value = log_of(value);
  e.mode = mode;
  e.witness = std::move(w);
  return e;
}

int wiener_depth(const SearchBudget& b, std::uint64_t n) {
  return static_cast<int>(std::min<std::uint64_t>(std::max<std::uint64_t>(n, b.grid_depth), kWienerDepthCap));
}

double gap_of(std::uint64_t n) {
  if (n == 0) throw FunctionError("Wiener functionals need n >= 1");
  return std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(n, 1000)));
}

// 1D Lambda-variation of sampled values; the core of several functionals.
struct Sampled1D {
  double value = 0.0;
  std::vector<Interval> intervals;  // descending by magnitude
  bool compressed = false;
};

Sampled1D lambda_on_samples(const Points& pts, const std::vector<double>& vals, const LambdaSequence& lambda,
                            std::size_t k) {
  Sampled1D out;
  const auto w = inverse_weights(lambda, k);
  if (w.empty()) return out;
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  const double g = static_cast<double>(pts.size());
  if (g * g / 2.0 * std::ldexp(1.0, static_cast<int>(w.size())) * static_cast<double>(w.size()) > kMaskDpOps) {
    idx = turning_points(vals);
    out.compressed = true;
  }
  auto weight = [&](std::size_t i, std::size_t j) { return std::abs(vals[idx[j]] - vals[idx[i]]); };
  const Collection c = best_collection(idx.size(), weight, w);
  std::vector<double> mags;
  std::vector<Interval> ivs;
  for (auto [i, j] : c.ivs) {
    mags.push_back(weight(i, j));
    ivs.push_back(seg(pts, idx[i], idx[j]));
  }
  const Ordered o = order_desc(mags, lambda);
  out.value = o.value;
  for (std::size_t r : o.order) out.intervals.push_back(ivs[r]);
  return out;
}

std::uint64_t comb_swings(const DyadicComb& c, const LambdaSequence& lambda) {
  std::uint64_t count = 2 * c.teeth();
  if (auto cap = lambda.max_index()) count = std::min(count, *cap);
  return count;
}

std::vector<Interval> comb_halves(const DyadicComb& c, std::uint64_t count) {
  std::vector<Interval> out;
  for (std::uint64_t j = c.j_lo(); j < c.j_hi() && out.size() < count; ++j) {
    const auto twoj = static_cast<std::int64_t>(2 * j);
    out.push_back(Interval::dyadic(DyadicRational(twoj - 1, c.s()), DyadicRational(twoj, c.s())));
    if (out.size() < count) out.push_back(Interval::dyadic(DyadicRational(twoj, c.s()), DyadicRational(twoj + 1, c.s())));
  }
  return out;
}

/// h * S(2N) for a comb: 2N swings of height |h| paired with lambda_1..lambda_2N.
Witness comb_witness(const DyadicComb& c, const LambdaSequence& lambda, double scale) {
  Witness w;
  const std::uint64_t count = comb_swings(c, lambda);
  if (count <= kListLimit) {
    w.intervals = comb_halves(c, count);
  } else {
    w.uniform_count = count;
    w.uniform_height = std::abs(c.h());
    w.uniform_scale = scale;
    w.intervals = comb_halves(c, 2);  // sample, for spot checks
  }
  return w;
}

double comb_value(const DyadicComb& c, const LambdaSequence& lambda) {
  if (c.h() == 0.0) return 0.0;
  return std::abs(c.h()) * lambda.reciprocal_partial_sum(comb_swings(c, lambda));
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(EstimateMode m) {
  switch (m) {
    case EstimateMode::exact_closed_form:
      return "exact-closed-form";
    case EstimateMode::oracle_verified:
      return "oracle-verified";
    case EstimateMode::lower_bound:
      return "lower-bound";
  }
  return "lower-bound";
}

void SearchBudget::validate() const {
  if (grid_depth < 1 || grid_depth > kMaxDepth) throw FunctionError("grid depth must be in [1, 12]");
  if (max_intervals < 1 || max_intervals > 12) throw FunctionError("max intervals must be in [1, 12]");
  if (restarts < 0) throw FunctionError("restarts must be >= 0");
}

double optimal_assignment(std::vector<double> increments, const LambdaSequence& lambda) {
  std::sort(increments.begin(), increments.end(), std::greater<>());
  CompensatedSum s;
  for (std::size_t i = 0; i < increments.size(); ++i) s.add(increments[i] / lambda.value(i + 1));
  return s.value();
}

double log_p_norm(const std::vector<double>& xs, double p) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  if (m == 0.0) return kNegInf;
  CompensatedSum s;
  for (double x : xs) s.add(std::pow(std::abs(x) / m, p));
  return std::log(m) + std::log(s.value()) / p;
}

VariationEstimate lambda_variation_1d(const Function1D& f, const LambdaSequence& lambda, const SearchBudget& budget) {
  budget.validate();
  if (const auto* c = f.comb()) {
    return finish("lambda_variation_1d", comb_value(*c, lambda), EstimateMode::exact_closed_form,
                  comb_witness(*c, lambda, 1.0));
  }
  const Points pts = make_points(budget.grid_depth, {&f}, budget.include_breakpoints, budget.extra_x, true);
  std::vector<double> vals;
  for (const auto& p : pts) vals.push_back(f.eval(p));
  Sampled1D s = lambda_on_samples(pts, vals, lambda, static_cast<std::size_t>(budget.max_intervals));
  Witness w;
  w.intervals = std::move(s.intervals);
  const bool small = pts.size() <= 65 && !s.compressed;
  return finish("lambda_variation_1d", s.value, small ? EstimateMode::oracle_verified : EstimateMode::lower_bound,
                std::move(w));
}

VariationEstimate wiener_variation_1d(const Function1D& f, const ExponentSequence& p, std::uint64_t n,
                                      const SearchBudget& budget) {
  budget.validate();
  const double gap = gap_of(n);
  const double pn = p.value(n);
  const int depth = wiener_depth(budget, n);
  const Points pts = make_points(depth, {&f}, budget.include_breakpoints, budget.extra_x, false);
  const std::vector<double> xs = to_doubles(pts);
  std::vector<double> vals;
  for (const auto& x : pts) vals.push_back(f.eval(x));
  const Cyclic c = best_cyclic(xs, [&](std::size_t i, std::size_t j) { return std::abs(vals[j] - vals[i]); }, pn, gap);
  Witness w;
  for (std::size_t i : c.pts) w.points.push_back(xs[i]);
  w.intervals = cyclic_intervals(pts, c.pts);
  const bool uncapped = static_cast<std::uint64_t>(depth) == std::max<std::uint64_t>(n, budget.grid_depth);
  VariationEstimate e = finish("wiener_variation_1d", std::exp(c.log_value),
                               uncapped && pts.size() <= 64 ? EstimateMode::oracle_verified : EstimateMode::lower_bound,
                               std::move(w));
  e.log_value = c.log_value;
  e.p = pn;
  e.n = n;
  return e;
}

WienerProfile wiener_profile(const Function1D& f, const ExponentSequence& p, std::uint64_t n_max,
                             const SearchBudget& budget) {
  WienerProfile out;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    out.per_n.push_back(wiener_variation_1d(f, p, n, budget));
    out.sup = std::max(out.sup, out.per_n.back().value);
  }
  return out;
}

double witness_lambda_1d(const Function1D& f, const LambdaSequence& lambda, const Witness& w) {
  if (w.uniform_count > 0) {
    return w.uniform_scale * w.uniform_height * lambda.reciprocal_partial_sum(w.uniform_count);
  }
  CompensatedSum s;
  for (std::size_t i = 0; i < w.intervals.size(); ++i) s.add(std::abs(f.increment(w.intervals[i])) / lambda.value(i + 1));
  return s.value();
}

double witness_wiener_1d(const Function1D& f, double p, const Witness& w) {
  std::vector<double> incs;
  for (const auto& i : w.intervals) incs.push_back(f.increment(i));
  const double l = log_p_norm(incs, p);
  return l == kNegInf ? 0.0 : std::exp(l);
}

// ---------------------------------------------------------------------------
// Two variables.

namespace {

struct YPick {
  std::size_t index = 0;
  double value = 0.0;  // v(y) at the pick
};

/// argmax_y |v(y)| over the candidate points.
YPick sup_pick(const std::vector<double>& vals) {
  YPick out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (std::abs(vals[i]) > std::abs(out.value)) out = {i, vals[i]};
  }
  return out;
}

/// mag[i*g+j] = max_y |sum_k (U[k][j] - U[k][i]) V[k][y]| for i < j, with the argmax.
struct PairMax {
  std::size_t g = 0;
  std::vector<double> mag;
  std::vector<std::uint32_t> arg;
  [[nodiscard]] double at(std::size_t i, std::size_t j) const { return mag[i * g + j]; }
};

PairMax pair_max(const std::vector<std::vector<double>>& u, const std::vector<std::vector<double>>& v, std::size_t g,
                 std::size_t ny) {
  PairMax out;
  out.g = g;
  out.mag.assign(g * g, 0.0);
  out.arg.assign(g * g, 0);
  const std::size_t t = u.size();
  std::vector<double> inc(t);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = i + 1; j < g; ++j) {
      bool any = false;
      for (std::size_t k = 0; k < t; ++k) {
        inc[k] = u[k][j] - u[k][i];
        any = any || inc[k] != 0.0;
      }
      if (!any) continue;
      double best = 0.0;
      std::uint32_t arg = 0;
      for (std::size_t y = 0; y < ny; ++y) {
        double s = 0.0;
        for (std::size_t k = 0; k < t; ++k) s += inc[k] * v[k][y];
        if (std::abs(s) > best) {
          best = std::abs(s);
          arg = static_cast<std::uint32_t>(y);
        }
      }
      out.mag[i * g + j] = best;
      out.arg[i * g + j] = arg;
    }
  }
  return out;
}

SearchBudget swapped(const SearchBudget& b) {
  SearchBudget out = b;
  std::swap(out.extra_x, out.extra_y);
  return out;
}

VariationEstimate as_transposed(VariationEstimate e, std::string name) {
  e.functional = std::move(name);
  e.witness.transposed = true;
  return e;
}

const TensorSum2D& oriented(const TensorSum2D& f, const Witness& w, TensorSum2D& scratch) {
  if (!w.transposed) return f;
  scratch = f.transposed();
  return scratch;
}

/// Candidate interval collections along one axis.
struct Collections {
  std::vector<std::vector<Interval>> lists;
  bool exhaustive = false;
};

void enumerate_collections(const Points& pts, std::size_t from, std::vector<Interval>& cur,
                           std::vector<std::vector<Interval>>& out) {
  if (!cur.empty()) out.push_back(cur);
  for (std::size_t i = from; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      cur.push_back(seg(pts, i, j));
      enumerate_collections(pts, j, cur, out);
      cur.pop_back();
    }
  }
}

Collections candidate_collections(const std::vector<const Function1D*>& fs, const SearchBudget& b,
                                  const Points& extra, const LambdaSequence& lambda) {
  Collections out;
  const Points pts = make_points(b.grid_depth, fs, b.include_breakpoints, extra, true);
  if (pts.size() <= 6) {
    std::vector<Interval> cur;
    enumerate_collections(pts, 0, cur, out.lists);
    out.exhaustive = true;
    return out;
  }
  auto cells = [&](const Points& p) {
    std::vector<Interval> c;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) c.push_back(seg(p, i, i + 1));
    return c;
  };
  for (int d = 1; d <= b.grid_depth; ++d) out.lists.push_back(cells(make_points(d, {}, false, {}, true)));
  out.lists.push_back(cells(pts));
  const auto table = sample(fs, pts);
  std::vector<double> total(pts.size(), 0.0);
  auto add_from_values = [&](const std::vector<double>& vals) {
    auto s = lambda_on_samples(pts, vals, lambda, static_cast<std::size_t>(b.max_intervals));
    if (!s.intervals.empty()) out.lists.push_back(std::move(s.intervals));
    const auto tp = turning_points(vals);
    std::vector<Interval> swings;
    for (std::size_t i = 0; i + 1 < tp.size(); ++i) {
      if (vals[tp[i]] != vals[tp[i + 1]]) swings.push_back(seg(pts, tp[i], tp[i + 1]));
    }
    if (!swings.empty()) out.lists.push_back(std::move(swings));
  };
  for (const auto& vals : table) {
    add_from_values(vals);
    for (std::size_t i = 0; i < vals.size(); ++i) total[i] += vals[i];
  }
  if (table.size() > 1) add_from_values(total);
  return out;
}

double double_value(const std::vector<std::vector<double>>& m, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols, const std::vector<double>& w) {
  CompensatedSum s;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) s.add(w[a] * w[b] * m[rows[a]][cols[b]]);
  }
  return s.value();
}

/// Orders `items` descending by score.
std::vector<std::size_t> sorted_by(const std::vector<double>& score) {
  std::vector<std::size_t> idx(score.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  return idx;
}

std::vector<std::size_t> best_rows_for(const std::vector<std::vector<double>>& m, const std::vector<std::size_t>& cols,
                                       const std::vector<double>& w) {
  std::vector<double> score(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t b = 0; b < cols.size(); ++b) score[i] += w[b] * m[i][cols[b]];
  }
  return sorted_by(score);
}

std::vector<std::vector<double>> transpose(const std::vector<std::vector<double>>& m) {
  if (m.empty()) return {};
  std::vector<std::vector<double>> t(m[0].size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

}  // namespace

DoubleAssignment double_assignment(const std::vector<std::vector<double>>& m, const LambdaSequence& lambda,
                                   const SearchBudget& budget) {
  DoubleAssignment out;
  const std::size_t r = m.size();
  const std::size_t c = r ? m[0].size() : 0;
  if (r == 0 || c == 0) {
    out.exact = true;
    return out;
  }
  const auto w = inverse_weights(lambda, std::max(r, c));
  if (w.size() < std::max(r, c)) throw SequenceError("lambda table too short for the interval collection");

  if (std::min(r, c) <= 7) {
    const bool flip = c > r;
    const auto mm = flip ? transpose(m) : m;
    std::vector<std::size_t> cols(flip ? r : c);
    std::iota(cols.begin(), cols.end(), 0);
    double best = -1.0;
    std::vector<std::size_t> best_rows, best_cols;
    do {
      auto rows = best_rows_for(mm, cols, w);
      const double v = double_value(mm, rows, cols, w);
      if (v > best) {
        best = v;
        best_rows = std::move(rows);
        best_cols = cols;
      }
    } while (std::next_permutation(cols.begin(), cols.end()));
    out.value = best;
    out.rows = flip ? best_cols : best_rows;
    out.cols = flip ? best_rows : best_cols;
    out.exact = true;
    return out;
  }

  const auto mt = transpose(m);
  std::mt19937_64 rng(budget.seed);
  std::vector<double> row_sums(r, 0.0);
  for (std::size_t i = 0; i < r; ++i) row_sums[i] = std::accumulate(m[i].begin(), m[i].end(), 0.0);
  std::vector<std::vector<std::size_t>> starts{sorted_by(row_sums)};
  for (int k = 0; k < budget.restarts; ++k) {
    std::vector<std::size_t> p(r);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    starts.push_back(std::move(p));
  }
  out.value = -1.0;
  for (auto rows : starts) {
    std::vector<std::size_t> cols;
    for (int pass = 0; pass < 20; ++pass) {
      auto next_cols = best_rows_for(mt, rows, w);
      auto next_rows = best_rows_for(m, next_cols, w);
      const bool same = next_cols == cols && next_rows == rows;
      cols = std::move(next_cols);
      rows = std::move(next_rows);
      if (same) break;
    }
    const double v = double_value(m, rows, cols, w);
    if (v > out.value) {
      out.value = v;
      out.rows = rows;
      out.cols = cols;
    }
  }
  return out;
}

VariationEstimate lambda_v1(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget) {
  budget.validate();
  if (f.empty()) return finish("lambda_v1", 0.0, EstimateMode::oracle_verified, {});
  const Points ys = make_points(budget.grid_depth, vs_of(f), budget.include_breakpoints, budget.extra_y, false);
  const auto v = sample(vs_of(f), ys);
  if (f.terms().size() == 1) {
    const YPick y = sup_pick(v[0]);
    VariationEstimate e = lambda_variation_1d(f.terms()[0].u, lambda, budget);
    e.functional = "lambda_v1";
    e.value *= std::abs(y.value);
    e.log_value = log_of(e.value);
    e.witness.ys = {ys[y.index].to_double()};
    e.witness.uniform_scale = std::abs(y.value);
    return e;
  }
  const Points xs = make_points(budget.grid_depth, us_of(f), budget.include_breakpoints, budget.extra_x, true);
  const auto u = sample(us_of(f), xs);
  Sampled1D best;
  std::size_t best_y = 0;
  bool compressed = false;
  std::vector<double> vals(xs.size());
  for (std::size_t y = 0; y < ys.size(); ++y) {
    std::fill(vals.begin(), vals.end(), 0.0);
    for (std::size_t k = 0; k < u.size(); ++k) {
      for (std::size_t i = 0; i < xs.size(); ++i) vals[i] += u[k][i] * v[k][y];
    }
    Sampled1D s = lambda_on_samples(xs, vals, lambda, static_cast<std::size_t>(budget.max_intervals));
    compressed = compressed || s.compressed;
    if (s.value > best.value) {
      best = std::move(s);
      best_y = y;
    }
  }
  Witness w;
  w.intervals = std::move(best.intervals);
  w.ys = {ys[best_y].to_double()};
  return finish("lambda_v1", best.value, EstimateMode::lower_bound, std::move(w));
}

VariationEstimate lambda_v2(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget) {
  return as_transposed(lambda_v1(f.transposed(), lambda, swapped(budget)), "lambda_v2");
}

double witness_lambda_v1(const TensorSum2D& f, const LambdaSequence& lambda, const Witness& w) {
  TensorSum2D scratch;
  const TensorSum2D& g = oriented(f, w, scratch);
  if (g.empty()) return 0.0;
  const double y = w.ys.at(0);
  if (w.uniform_count > 0) {
    return std::abs(g.terms()[0].v.eval(y)) * w.uniform_height * lambda.reciprocal_partial_sum(w.uniform_count);
  }
  CompensatedSum s;
  for (std::size_t i = 0; i < w.intervals.size(); ++i) s.add(std::abs(increment_x(g, w.intervals[i], y)) / lambda.value(i + 1));
  return s.value();
}

VariationEstimate lambda_sharp_v1(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget) {
  budget.validate();
  if (f.empty()) return finish("lambda_sharp_v1", 0.0, EstimateMode::oracle_verified, {});
  const Points ys = make_points(budget.grid_depth, vs_of(f), budget.include_breakpoints, budget.extra_y, false);
  const auto v = sample(vs_of(f), ys);
  if (f.terms().size() == 1) {
    const YPick y = sup_pick(v[0]);
    VariationEstimate e = lambda_variation_1d(f.terms()[0].u, lambda, budget);
    e.functional = "lambda_sharp_v1";
    e.value *= std::abs(y.value);
    e.log_value = log_of(e.value);
    e.witness.ys.assign(std::max<std::size_t>(1, e.witness.intervals.size()), ys[y.index].to_double());
    e.witness.uniform_scale = std::abs(y.value);
    return e;
  }
  const Points xs = make_points(budget.grid_depth, us_of(f), budget.include_breakpoints, budget.extra_x, true);
  const auto u = sample(us_of(f), xs);
  const PairMax pm = pair_max(u, v, xs.size(), ys.size());
  const auto w = inverse_weights(lambda, static_cast<std::size_t>(budget.max_intervals));
  const double g = static_cast<double>(xs.size());
  const bool heavy = g * g / 2.0 * std::ldexp(1.0, static_cast<int>(w.size())) * static_cast<double>(w.size()) > kMaskDpOps;
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (heavy) {
    // Keep a coarse subgrid; still a valid lower bound.
    std::vector<std::size_t> sub;
    const std::size_t step = xs.size() / 128 + 1;
    for (std::size_t i = 0; i < xs.size(); i += step) sub.push_back(i);
    if (sub.back() != xs.size() - 1) sub.push_back(xs.size() - 1);
    idx = std::move(sub);
  }
  const Collection c = best_collection(idx.size(), [&](std::size_t i, std::size_t j) { return pm.at(idx[i], idx[j]); }, w);
  std::vector<double> mags;
  for (auto [i, j] : c.ivs) mags.push_back(pm.at(idx[i], idx[j]));
  const Ordered o = order_desc(mags, lambda);
  Witness wit;
  for (std::size_t r : o.order) {
    const auto [i, j] = c.ivs[r];
    wit.intervals.push_back(seg(xs, idx[i], idx[j]));
    wit.ys.push_back(ys[pm.arg[idx[i] * pm.g + idx[j]]].to_double());
  }
  const bool small = xs.size() <= 9 && !heavy;
  return finish("lambda_sharp_v1", o.value, small ? EstimateMode::oracle_verified : EstimateMode::lower_bound,
                std::move(wit));
}

VariationEstimate lambda_sharp_v2(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget) {
  return as_transposed(lambda_sharp_v1(f.transposed(), lambda, swapped(budget)), "lambda_sharp_v2");
}

double witness_sharp_v1(const TensorSum2D& f, const LambdaSequence& lambda, const Witness& w) {
  TensorSum2D scratch;
  const TensorSum2D& g = oriented(f, w, scratch);
  if (g.empty()) return 0.0;
  if (w.uniform_count > 0) {
    return std::abs(g.terms()[0].v.eval(w.ys.at(0))) * w.uniform_height * lambda.reciprocal_partial_sum(w.uniform_count);
  }
  CompensatedSum s;
  for (std::size_t i = 0; i < w.intervals.size(); ++i) {
    s.add(std::abs(increment_x(g, w.intervals[i], w.ys.at(i))) / lambda.value(i + 1));
  }
  return s.value();
}

VariationEstimate lambda_v12(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget) {
  budget.validate();
  if (f.empty()) return finish("lambda_v12", 0.0, EstimateMode::oracle_verified, {});
  if (f.terms().size() == 1) {
    const auto eu = lambda_variation_1d(f.terms()[0].u, lambda, budget);
    const auto ev = lambda_variation_1d(f.terms()[0].v, lambda, swapped(budget));
    Witness w;
    w.intervals = eu.witness.intervals;
    w.uniform_count = eu.witness.uniform_count;
    w.uniform_height = eu.witness.uniform_height;
    w.intervals_y = ev.witness.intervals;
    w.uniform_count_y = ev.witness.uniform_count;
    w.uniform_height_y = ev.witness.uniform_height;
    const bool closed = eu.mode == EstimateMode::exact_closed_form && ev.mode == EstimateMode::exact_closed_form;
    return finish("lambda_v12", eu.value * ev.value, closed ? EstimateMode::exact_closed_form : EstimateMode::lower_bound,
                  std::move(w));
  }
  const Collections cx = candidate_collections(us_of(f), budget, budget.extra_x, lambda);
  const Collections cy = candidate_collections(vs_of(f), budget, budget.extra_y, lambda);
  auto increments = [&](const Collections& c, bool x_axis) {
    // inc[list][k][i]
    std::vector<std::vector<std::vector<double>>> out;
    for (const auto& list : c.lists) {
      std::vector<std::vector<double>> per(f.terms().size());
      for (std::size_t k = 0; k < f.terms().size(); ++k) {
        const Function1D& g = x_axis ? f.terms()[k].u : f.terms()[k].v;
        for (const auto& iv : list) per[k].push_back(g.increment(iv));
      }
      out.push_back(std::move(per));
    }
    return out;
  };
  const auto ix = increments(cx, true);
  const auto iy = increments(cy, false);
  double best = -1.0;
  Witness w;
  bool all_exact = true;
  for (std::size_t a = 0; a < cx.lists.size(); ++a) {
    for (std::size_t b = 0; b < cy.lists.size(); ++b) {
      const std::size_t r = cx.lists[a].size(), c = cy.lists[b].size();
      std::vector<std::vector<double>> m(r, std::vector<double>(c, 0.0));
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
          double s = 0.0;
          for (std::size_t k = 0; k < f.terms().size(); ++k) s += ix[a][k][i] * iy[b][k][j];
          m[i][j] = std::abs(s);
        }
      }
      const DoubleAssignment d = double_assignment(m, lambda, budget);
      all_exact = all_exact && d.exact;
      if (d.value > best) {
        best = d.value;
        w.intervals.clear();
        w.intervals_y.clear();
        for (std::size_t i : d.rows) w.intervals.push_back(cx.lists[a][i]);
        for (std::size_t j : d.cols) w.intervals_y.push_back(cy.lists[b][j]);
      }
    }
  }
  const bool verified = cx.exhaustive && cy.exhaustive && all_exact;
  return finish("lambda_v12", std::max(best, 0.0), verified ? EstimateMode::oracle_verified : EstimateMode::lower_bound,
                std::move(w));
}

double witness_v12(const TensorSum2D& f, const LambdaSequence& lambda, const Witness& w) {
  if (f.empty()) return 0.0;
  if (w.uniform_count > 0 || w.uniform_count_y > 0) {
    // Single-term closed form: the double sum factorizes.
    Witness wx;
    wx.intervals = w.intervals;
    wx.uniform_count = w.uniform_count;
    wx.uniform_height = w.uniform_height;
    Witness wy;
    wy.intervals = w.intervals_y;
    wy.uniform_count = w.uniform_count_y;
    wy.uniform_height = w.uniform_height_y;
    return witness_lambda_1d(f.terms()[0].u, lambda, wx) * witness_lambda_1d(f.terms()[0].v, lambda, wy);
  }
  CompensatedSum s;
  for (std::size_t i = 0; i < w.intervals.size(); ++i) {
    for (std::size_t j = 0; j < w.intervals_y.size(); ++j) {
      s.add(std::abs(rect_increment(f, {w.intervals[i], w.intervals_y[j]})) / (lambda.value(i + 1) * lambda.value(j + 1)));
    }
  }
  return s.value();
}

namespace {

struct RectIdx {
  std::size_t a, b, c, d;  // x-interval [a,b], y-interval [c,d] as point indices
  double mag;
};

bool overlap(const RectIdx& p, const RectIdx& q) {
  const bool x_disjoint = p.b <= q.a || q.b <= p.a;
  const bool y_disjoint = p.d <= q.c || q.d <= p.c;
  return !(x_disjoint || y_disjoint);
}

struct StarBest {
  double value = -1.0;
  std::vector<RectIdx> rects;
};

void consider(StarBest& best, std::vector<RectIdx> rects, const LambdaSequence& lambda) {
  std::stable_sort(rects.begin(), rects.end(), [](const RectIdx& p, const RectIdx& q) { return p.mag > q.mag; });
  CompensatedSum s;
  for (std::size_t i = 0; i < rects.size(); ++i) s.add(rects[i].mag / lambda.value(i + 1));
  if (s.value() > best.value) {
    best.value = s.value();
    best.rects = std::move(rects);
  }
}

void star_subsets(const std::vector<RectIdx>& all, std::size_t from, std::vector<RectIdx>& cur, StarBest& best,
                  const LambdaSequence& lambda) {
  consider(best, cur, lambda);
  for (std::size_t i = from; i < all.size(); ++i) {
    if (all[i].mag == 0.0) continue;
    bool ok = true;
    for (const auto& r : cur) ok = ok && !overlap(r, all[i]);
    if (!ok) continue;
    cur.push_back(all[i]);
    star_subsets(all, i + 1, cur, best, lambda);
    cur.pop_back();
  }
}

}  // namespace

VariationEstimate lambda_star_v(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget) {
  budget.validate();
  if (f.empty()) return finish("lambda_star_v", 0.0, EstimateMode::oracle_verified, {});
  const Points xs = make_points(budget.grid_depth, us_of(f), budget.include_breakpoints, budget.extra_x, true);
  const Points ys = make_points(budget.grid_depth, vs_of(f), budget.include_breakpoints, budget.extra_y, true);
  const auto u = sample(us_of(f), xs);
  const auto v = sample(vs_of(f), ys);
  auto mag = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += (u[k][b] - u[k][a]) * (v[k][d] - v[k][c]);
    return s;
  };
  const std::size_t gx = xs.size(), gy = ys.size();
  const double count = static_cast<double>(gx * (gx - 1) / 2) * static_cast<double>(gy * (gy - 1) / 2);
  StarBest best;
  bool exact = false;
  if (count <= 12) {
    std::vector<RectIdx> all;
    for (std::size_t a = 0; a < gx; ++a)
      for (std::size_t b = a + 1; b < gx; ++b)
        for (std::size_t c = 0; c < gy; ++c)
          for (std::size_t d = c + 1; d < gy; ++d) all.push_back({a, b, c, d, std::abs(mag(a, b, c, d))});
    std::vector<RectIdx> cur;
    star_subsets(all, 0, cur, best, lambda);
    exact = true;
  } else {
    // Cells of the candidate grid, then same-sign runs merged along rows or columns.
    std::vector<RectIdx> cells;
    for (std::size_t a = 0; a + 1 < gx; ++a)
      for (std::size_t c = 0; c + 1 < gy; ++c) cells.push_back({a, a + 1, c, c + 1, std::abs(mag(a, a + 1, c, c + 1))});
    consider(best, cells, lambda);
    auto sign = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
      const double s = mag(a, b, c, d);
      return (s > 0.0) - (s < 0.0);
    };
    std::vector<RectIdx> rows, cols;
    for (std::size_t c = 0; c + 1 < gy; ++c) {
      std::size_t a = 0;
      while (a + 1 < gx) {
        std::size_t b = a + 1;
        const int sg = sign(a, b, c, c + 1);
        while (b + 1 < gx && sg != 0 && sign(b, b + 1, c, c + 1) == sg) ++b;
        rows.push_back({a, b, c, c + 1, std::abs(mag(a, b, c, c + 1))});
        a = b;
      }
    }
    for (std::size_t a = 0; a + 1 < gx; ++a) {
      std::size_t c = 0;
      while (c + 1 < gy) {
        std::size_t d = c + 1;
        const int sg = sign(a, a + 1, c, d);
        while (d + 1 < gy && sg != 0 && sign(a, a + 1, d, d + 1) == sg) ++d;
        cols.push_back({a, a + 1, c, d, std::abs(mag(a, a + 1, c, d))});
        c = d;
      }
    }
    consider(best, rows, lambda);
    consider(best, cols, lambda);
    // Greedy by magnitude over all grid rectangles.
    if (count <= 2e5) {
      std::vector<RectIdx> all;
      for (std::size_t a = 0; a < gx; ++a)
        for (std::size_t b = a + 1; b < gx; ++b)
          for (std::size_t c = 0; c < gy; ++c)
            for (std::size_t d = c + 1; d < gy; ++d) {
              const double m = std::abs(mag(a, b, c, d));
              if (m > 0.0) all.push_back({a, b, c, d, m});
            }
      std::stable_sort(all.begin(), all.end(), [](const RectIdx& p, const RectIdx& q) { return p.mag > q.mag; });
      std::vector<RectIdx> greedy;
      for (const auto& r : all) {
        bool ok = true;
        for (const auto& g : greedy) ok = ok && !overlap(g, r);
        if (ok) greedy.push_back(r);
        if (greedy.size() >= 4096) break;
      }
      consider(best, greedy, lambda);
    }
  }
  Witness w;
  for (const auto& r : best.rects) {
    if (r.mag == 0.0) continue;
    w.rectangles.push_back({seg(xs, r.a, r.b), seg(ys, r.c, r.d)});
  }
  return finish("lambda_star_v", std::max(best.value, 0.0), exact ? EstimateMode::oracle_verified : EstimateMode::lower_bound,
                std::move(w));
}

double witness_star(const TensorSum2D& f, const LambdaSequence& lambda, const Witness& w) {
  CompensatedSum s;
  for (std::size_t i = 0; i < w.rectangles.size(); ++i) s.add(std::abs(rect_increment(f, w.rectangles[i])) / lambda.value(i + 1));
  return s.value();
}

VariationEstimate wiener_sharp_v1(const TensorSum2D& f, const ExponentSequence& p, std::uint64_t n,
                                  const SearchBudget& budget) {
  budget.validate();
  const double pn = p.value(n);
  if (f.empty()) {
    VariationEstimate e = finish("wiener_sharp_v1", 0.0, EstimateMode::oracle_verified, {});
    e.p = pn;
    e.n = n;
    return e;
  }
  const Points ys = make_points(budget.grid_depth, vs_of(f), budget.include_breakpoints, budget.extra_y, false);
  const auto v = sample(vs_of(f), ys);
  if (f.terms().size() == 1) {
    const YPick y = sup_pick(v[0]);
    VariationEstimate e = wiener_variation_1d(f.terms()[0].u, p, n, budget);
    e.functional = "wiener_sharp_v1";
    e.value *= std::abs(y.value);
    e.log_value = log_of(e.value);
    e.witness.ys.assign(e.witness.intervals.size(), ys[y.index].to_double());
    return e;
  }
  const double gap = gap_of(n);
  const int depth = wiener_depth(budget, n);
  const Points xs = make_points(depth, us_of(f), budget.include_breakpoints, budget.extra_x, false);
  const std::vector<double> xd = to_doubles(xs);
  const auto u = sample(us_of(f), xs);
  const PairMax pm = pair_max(u, v, xs.size(), ys.size());
  const Cyclic c = best_cyclic(xd, [&](std::size_t i, std::size_t j) { return pm.at(i, j); }, pn, gap);
  Witness w;
  for (std::size_t i : c.pts) w.points.push_back(xd[i]);
  w.intervals = cyclic_intervals(xs, c.pts);
  for (std::size_t k = 0; k < c.pts.size(); ++k) {
    const std::size_t i = c.pts[k];
    const std::size_t j = c.pts[(k + 1) % c.pts.size()];
    const std::size_t lo = std::min(i, j), hi = std::max(i, j);
    w.ys.push_back(lo == hi ? ys[0].to_double() : ys[pm.arg[lo * pm.g + hi]].to_double());
  }
  VariationEstimate e = finish("wiener_sharp_v1", std::exp(c.log_value), EstimateMode::lower_bound, std::move(w));
  e.log_value = c.log_value;
  e.p = pn;
  e.n = n;
  return e;
}

VariationEstimate wiener_sharp_v2(const TensorSum2D& f, const ExponentSequence& p, std::uint64_t n,
                                  const SearchBudget& budget) {
  return as_transposed(wiener_sharp_v1(f.transposed(), p, n, swapped(budget)), "wiener_sharp_v2");
}

double witness_wiener_sharp(const TensorSum2D& f, double p, const Witness& w) {
  TensorSum2D scratch;
  const TensorSum2D& g = oriented(f, w, scratch);
  std::vector<double> incs;
  for (std::size_t k = 0; k < w.intervals.size(); ++k) incs.push_back(increment_x(g, w.intervals[k], w.ys.at(k)));
  const double l = log_p_norm(incs, p);
  return l == kNegInf ? 0.0 : std::exp(l);
}

InequalityReport inequality_check_th1(const TensorSum2D& f, const LambdaSequence& lambda, const ExponentSequence& p,
                                      std::uint64_t n, std::uint64_t trials, std::uint64_t seed, double upper_cert) {
  if (!(upper_cert >= 0.0)) throw FunctionError("upper certificate must be >= 0");
  InequalityReport rep;
  const double gap = gap_of(n);
  const double pn = p.value(n);
  const MOfN best = m_of_n(lambda, p, n);
  const double log_rhs = std::log(upper_cert) + best.ratio.log;
  rep.rhs = std::exp(log_rhs);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const double max_points = std::min(64.0, std::floor(1.0 / gap));
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto m = 1 + static_cast<std::uint64_t>(rng() % static_cast<std::uint64_t>(max_points));
    std::vector<double> pts, ys;
    if (t % 2 == 0 && n <= 30) {
      const std::uint64_t cells = std::uint64_t{1} << n;
      std::set<std::uint64_t> picks;
      while (picks.size() < m) picks.insert(rng() % cells);
      for (std::uint64_t k : picks) pts.push_back(std::ldexp(static_cast<double>(k), -static_cast<int>(n)));
      for (std::uint64_t k = 0; k < m; ++k) ys.push_back(std::ldexp(static_cast<double>(rng() % cells), -static_cast<int>(n)));
    } else {
      std::vector<double> wts(m);
      double total = 0.0;
      for (double& x : wts) total += (x = expo(rng));
      const double slack = 1.0 - static_cast<double>(m) * gap;
      double x = unit(rng);
      for (std::uint64_t k = 0; k < m; ++k) {
        pts.push_back(x - std::floor(x));
        x += gap + slack * wts[k] / total;
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      for (std::size_t k = 0; k < pts.size(); ++k) ys.push_back(unit(rng));
    }
    const CyclicPartition part(pts);
    const auto ivs = part.intervals();
    std::vector<double> incs;
    for (std::size_t k = 0; k < ivs.size(); ++k) incs.push_back(increment_x(f, ivs[k], ys[k]));
    const double lhs = log_p_norm(incs, pn);
    ++rep.trials;
    if (lhs == kNegInf) continue;
    const double r = std::exp(lhs - log_rhs);
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
      rep.worst_points = pts;
      rep.worst_ys = ys;
    }
  }
  rep.ok = rep.max_ratio <= 1.0 + 1e-9;
  return rep;
}

}  // namespace gvar
