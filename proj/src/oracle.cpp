#include "gvar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace gvar::oracle {

namespace {

class Counter {
 public:
  void tick() {
    if (++count_ > kMaxConfigurations) throw OracleError("oracle enumeration exceeds 10^7 configurations");
  }

 private:
  std::uint64_t count_ = 0;
};

std::vector<double> grid(int depth, bool closed) {
  const int n = 1 << depth;
  std::vector<double> out;
  for (int k = 0; k < n + (closed ? 1 : 0); ++k) out.push_back(std::ldexp(static_cast<double>(k), -depth));
  return out;
}

double sorted_pairing(std::vector<double> v, const LambdaSequence& lambda) {
  std::sort(v.begin(), v.end(), std::greater<>());
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] / lambda.value(i + 1);
  return s;
}

double p_norm(const std::vector<double>& v, double p) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x) / m, p);
  return m * std::pow(s, 1.0 / p);
}

struct Span {
  std::size_t a, b;
};

/// Every nonempty collection of at most `limit` nonoverlapping intervals on
/// points 0..g-1, passed to `visit`.
void collections(std::size_t g, std::size_t limit, Counter& counter,
                 const std::function<void(const std::vector<Span>&)>& visit) {
  std::vector<Span> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!cur.empty()) {
      counter.tick();
      visit(cur);
    }
    if (cur.size() == limit) return;
    for (std::size_t a = from; a < g; ++a) {
      for (std::size_t b = a + 1; b < g; ++b) {
        cur.push_back({a, b});
        rec(b);
        cur.pop_back();
      }
    }
  };
  rec(0);
}

/// Every cyclic partition (point subset, wrap included) with gaps >= gap.
void partitions(const std::vector<double>& xs, double gap, std::size_t limit, Counter& counter,
                const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!cur.empty() && xs[cur.front()] + 1.0 - xs[cur.back()] >= gap) {
      counter.tick();
      visit(cur);
    }
    if (cur.size() == limit) return;
    for (std::size_t i = from; i < xs.size(); ++i) {
      if (!cur.empty() && xs[i] - xs[cur.back()] < gap) continue;
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

double all_orders(const std::vector<double>& v, const LambdaSequence& lambda) {
  std::vector<std::size_t> perm(v.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) s += v[perm[i]] / lambda.value(i + 1);
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

void GridSpec::validate() const {
  if (depth < 0 || depth > 6) throw OracleError("oracle grid depth must be in [0, 6]");
  if (max_intervals < 1 || max_intervals > 6) throw OracleError("oracle max intervals must be in [1, 6]");
  if (max_partition_points < 1 || max_partition_points > 10) throw OracleError("oracle partition points must be in [1, 10]");
  if (max_rectangles < 1 || max_rectangles > 4) throw OracleError("oracle rectangles must be in [1, 4]");
}

double brute_assignment(const std::vector<double>& values, const LambdaSequence& lambda) {
  if (values.size() > 7) throw OracleError("brute_assignment is limited to 7 values");
  if (values.empty()) return 0.0;
  return all_orders(values, lambda);
}

namespace {

// Depth-first over collections; `desc` holds the chosen increments sorted
// descending so each node is scored by one dot product.
struct LambdaWalk {
  const std::vector<double>& vals;
  const std::vector<double>& w;
  std::size_t limit;
  Counter& counter;
  std::vector<double> desc;
  double best = 0.0;

  void score() {
    counter.tick();
    double s = 0.0;
    for (std::size_t i = 0; i < desc.size(); ++i) s += desc[i] * w[i];
    best = std::max(best, s);
  }

  void run(std::size_t from) {
    if (!desc.empty()) score();
    if (desc.size() == limit) return;
    const std::size_t g = vals.size();
    for (std::size_t a = from; a < g; ++a) {
      for (std::size_t b = a + 1; b < g; ++b) {
        const double inc = std::abs(vals[b] - vals[a]);
        auto pos = std::upper_bound(desc.begin(), desc.end(), inc, std::greater<>());
        const auto at = pos - desc.begin();
        desc.insert(pos, inc);
        run(b);
        desc.erase(desc.begin() + at);
      }
    }
  }
};

}  // namespace

double brute_lambda_1d(const Function1D& f, const LambdaSequence& lambda, const GridSpec& g) {
  g.validate();
  const auto xs = grid(g.depth, true);
  std::vector<double> vals;
  for (double x : xs) vals.push_back(f.eval(x));
  std::vector<double> w;
  for (int i = 1; i <= g.max_intervals; ++i) w.push_back(1.0 / lambda.value(static_cast<std::uint64_t>(i)));
  Counter counter;
  LambdaWalk walk{vals, w, static_cast<std::size_t>(g.max_intervals), counter, {}, 0.0};
  walk.desc.reserve(w.size());
  walk.run(0);
  return walk.best;
}

double brute_wiener_1d(const Function1D& f, double p, std::uint64_t n, const GridSpec& g) {
  g.validate();
  const auto xs = grid(g.depth, false);
  std::vector<double> vals;
  for (double x : xs) vals.push_back(f.eval(x));
  const double gap = std::ldexp(1.0, -static_cast<int>(n));
  Counter counter;
  double best = 0.0;
  std::vector<double> incs;
  partitions(xs, gap, static_cast<std::size_t>(g.max_partition_points), counter, [&](const std::vector<std::size_t>& c) {
    incs.clear();
    for (std::size_t k = 0; k < c.size(); ++k) incs.push_back(vals[c[(k + 1) % c.size()]] - vals[c[k]]);
    best = std::max(best, p_norm(incs, p));
  });
  return best;
}

double brute_sharp_v1(const TensorSum2D& f, const LambdaSequence& lambda, const GridSpec& g) {
  g.validate();
  const auto xs = grid(g.depth, true);
  const auto ys = grid(g.depth, false);
  Counter counter;
  double best = 0.0;
  collections(xs.size(), static_cast<std::size_t>(g.max_intervals), counter, [&](const std::vector<Span>& c) {
    std::vector<std::size_t> pick(c.size(), 0);
    std::vector<double> incs(c.size());
    while (true) {
      counter.tick();
      for (std::size_t i = 0; i < c.size(); ++i) {
        incs[i] = std::abs(f.eval(xs[c[i].b], ys[pick[i]]) - f.eval(xs[c[i].a], ys[pick[i]]));
      }
      best = std::max(best, sorted_pairing(incs, lambda));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == ys.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  });
  return best;
}

double brute_v12_matrix(const std::vector<std::vector<double>>& m, const LambdaSequence& lambda) {
  const std::size_t r = m.size();
  const std::size_t c = r ? m[0].size() : 0;
  if (r > 5 || c > 5) throw OracleError("brute_v12_matrix is limited to 5 x 5");
  if (r == 0 || c == 0) return 0.0;
  std::vector<std::size_t> rows(r), cols(c);
  std::iota(rows.begin(), rows.end(), 0);
  double best = 0.0;
  do {
    std::iota(cols.begin(), cols.end(), 0);
    do {
      double s = 0.0;
      for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = 0; b < c; ++b) s += m[rows[a]][cols[b]] / (lambda.value(a + 1) * lambda.value(b + 1));
      }
      best = std::max(best, s);
    } while (std::next_permutation(cols.begin(), cols.end()));
  } while (std::next_permutation(rows.begin(), rows.end()));
  return best;
}

double brute_v12(const TensorSum2D& f, const LambdaSequence& lambda, const GridSpec& g) {
  g.validate();
  if (g.depth > 2) throw OracleError("brute_v12 is limited to depth 2");
  const auto xs = grid(g.depth, true);
  Counter counter;
  std::vector<std::vector<Span>> all;
  collections(xs.size(), 5, counter, [&](const std::vector<Span>& c) { all.push_back(c); });
  double best = 0.0;
  for (const auto& cx : all) {
    for (const auto& cy : all) {
      counter.tick();
      std::vector<std::vector<double>> m(cx.size(), std::vector<double>(cy.size()));
      for (std::size_t i = 0; i < cx.size(); ++i) {
        for (std::size_t j = 0; j < cy.size(); ++j) {
          const double a = xs[cx[i].a], b = xs[cx[i].b], c = xs[cy[j].a], d = xs[cy[j].b];
          m[i][j] = std::abs(f.eval(a, c) - f.eval(a, d) - f.eval(b, c) + f.eval(b, d));
        }
      }
      best = std::max(best, brute_v12_matrix(m, lambda));
    }
  }
  return best;
}

double brute_star(const TensorSum2D& f, const LambdaSequence& lambda, const GridSpec& g) {
  g.validate();
  const auto xs = grid(g.depth, true);
  struct Rect {
    std::size_t a, b, c, d;
    double mag;
  };
  std::vector<Rect> rects;
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = a + 1; b < xs.size(); ++b)
      for (std::size_t c = 0; c < xs.size(); ++c)
        for (std::size_t d = c + 1; d < xs.size(); ++d) {
          const double v = f.eval(xs[a], xs[c]) - f.eval(xs[a], xs[d]) - f.eval(xs[b], xs[c]) + f.eval(xs[b], xs[d]);
          rects.push_back({a, b, c, d, std::abs(v)});
        }
  auto disjoint = [](const Rect& p, const Rect& q) {
    return p.b <= q.a || q.b <= p.a || p.d <= q.c || q.d <= p.c;
  };
  Counter counter;
  double best = 0.0;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!cur.empty()) {
      counter.tick();
      std::vector<double> v;
      for (std::size_t i : cur) v.push_back(rects[i].mag);
      best = std::max(best, all_orders(v, lambda));
    }
    if (cur.size() == static_cast<std::size_t>(g.max_rectangles)) return;
    for (std::size_t i = from; i < rects.size(); ++i) {
      bool ok = true;
      for (std::size_t j : cur) ok = ok && disjoint(rects[i], rects[j]);
      if (!ok) continue;
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return best;
}

double brute_wiener_sharp_v1(const TensorSum2D& f, double p, std::uint64_t n, const GridSpec& g) {
  g.validate();
  const auto xs = grid(g.depth, false);
  const auto ys = grid(g.depth, false);
  const double gap = std::ldexp(1.0, -static_cast<int>(n));
  Counter counter;
  double best = 0.0;
  partitions(xs, gap, static_cast<std::size_t>(g.max_partition_points), counter, [&](const std::vector<std::size_t>& c) {
    std::vector<std::size_t> pick(c.size(), 0);
    std::vector<double> incs(c.size());
    while (true) {
      counter.tick();
      for (std::size_t k = 0; k < c.size(); ++k) {
        const double a = xs[c[k]];
        const double b = k + 1 < c.size() ? xs[c[k + 1]] : xs[c[0]] + 1.0;
        incs[k] = f.eval(b, ys[pick[k]]) - f.eval(a, ys[pick[k]]);
      }
      best = std::max(best, p_norm(incs, p));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == ys.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  });
  return best;
}

}  // namespace gvar::oracle
