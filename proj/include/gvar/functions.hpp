#pragma once

// 1-periodic functions of one variable (piecewise linear, or the analytic
// tooth comb) and finite tensor sums F(x,y) = sum_k u_k(x) v_k(y).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "gvar/dyadic.hpp"

namespace gvar {

class FunctionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real endpoint with an optional exact dyadic twin. When both endpoints of
/// an interval carry the twin, evaluation takes the exact path.
struct Point {
  double x = 0.0;
  std::optional<DyadicRational> exact;

  static Point real(double x) { return {x, std::nullopt}; }
  static Point dyadic(DyadicRational d) { return {d.to_double(), d}; }
};

/// (a, b) with b - a in (0, 1]. a may lie anywhere; functions are periodic.
struct Interval {
  Point a;
  Point b;

  static Interval real(double a, double b);
  static Interval dyadic(DyadicRational a, DyadicRational b);
  [[nodiscard]] double length() const { return b.x - a.x; }
  [[nodiscard]] bool exact() const { return a.exact.has_value() && b.exact.has_value(); }
};

struct Rectangle {
  Interval x;
  Interval y;
};

/// Points t_1 < ... < t_m in [0, 1); intervals (t_i, t_{i+1}) and the wrap
/// interval (t_m, t_1 + 1).
class CyclicPartition {
 public:
  explicit CyclicPartition(std::vector<double> points);
  [[nodiscard]] const std::vector<double>& points() const { return points_; }
  [[nodiscard]] std::vector<Interval> intervals() const;
  [[nodiscard]] double min_gap() const;

 private:
  std::vector<double> points_;
};

class PiecewiseLinearPeriodic {
 public:
  /// Breakpoints strictly increasing in [0, 1), one value each.
  PiecewiseLinearPeriodic(std::vector<DyadicRational> breakpoints, std::vector<double> values);
  static PiecewiseLinearPeriodic constant(double c);
  /// 0 at 0, 1 at 1/2.
  static PiecewiseLinearPeriodic triangle();

  [[nodiscard]] const std::vector<DyadicRational>& breakpoints() const { return bp_; }
  [[nodiscard]] const std::vector<double>& values() const { return vals_; }
  [[nodiscard]] double eval(double x) const;
  [[nodiscard]] double eval(const DyadicRational& x) const;

 private:
  [[nodiscard]] double interpolate(std::size_t seg, double frac) const;

  std::vector<DyadicRational> bp_;
  std::vector<double> bpd_;
  std::vector<double> vals_;
};

/// Teeth h (1 - |2^s x - 2j|) on [(2j-1)/2^s, (2j+1)/2^s] for
/// j_lo <= j < j_hi, zero elsewhere on the circle.
class DyadicComb {
 public:
  DyadicComb(int s, std::uint64_t j_lo, std::uint64_t j_hi, double h);

  [[nodiscard]] int s() const { return s_; }
  [[nodiscard]] std::uint64_t j_lo() const { return j_lo_; }
  [[nodiscard]] std::uint64_t j_hi() const { return j_hi_; }
  [[nodiscard]] double h() const { return h_; }
  [[nodiscard]] std::uint64_t teeth() const { return j_hi_ - j_lo_; }

  [[nodiscard]] double eval(double x) const;
  [[nodiscard]] double eval(const DyadicRational& x) const;
  /// Materialized twin; throws for more than `max_teeth` teeth.
  [[nodiscard]] PiecewiseLinearPeriodic to_piecewise_linear(std::uint64_t max_teeth = 4096) const;

 private:
  [[nodiscard]] double tooth(std::uint64_t j, double height_frac) const;

  int s_;
  std::uint64_t j_lo_;
  std::uint64_t j_hi_;
  double h_;
};

/// Monotone-piece swings: `count` swings in total, listed explicitly when
/// the count is small, otherwise summarized by a common height.
struct SwingSummary {
  std::uint64_t count = 0;
  std::vector<double> heights;           // sorted descending; empty if not listed
  std::optional<double> uniform_height;  // all swings equal (combs)
};

class Function1D {
 public:
  Function1D(PiecewiseLinearPeriodic f) : impl_(std::move(f)) {}  // NOLINT
  Function1D(DyadicComb f) : impl_(f) {}                          // NOLINT

  [[nodiscard]] bool is_comb() const { return std::holds_alternative<DyadicComb>(impl_); }
  [[nodiscard]] const DyadicComb* comb() const { return std::get_if<DyadicComb>(&impl_); }
  [[nodiscard]] const PiecewiseLinearPeriodic* piecewise() const { return std::get_if<PiecewiseLinearPeriodic>(&impl_); }

  [[nodiscard]] double eval(double x) const;
  [[nodiscard]] double eval(const DyadicRational& x) const;
  [[nodiscard]] double eval(const Point& p) const;
  [[nodiscard]] double increment(const Interval& i) const;

  [[nodiscard]] double sup_norm() const;
  [[nodiscard]] SwingSummary swings() const;
  /// Breakpoints (teeth feet and peaks for combs), if at most `limit`.
  [[nodiscard]] std::optional<std::vector<DyadicRational>> breakpoints(std::size_t limit = 1 << 14) const;
  [[nodiscard]] Function1D scaled(double c) const;
  [[nodiscard]] PiecewiseLinearPeriodic to_piecewise_linear(std::uint64_t max_teeth = 4096) const;

 private:
  std::variant<PiecewiseLinearPeriodic, DyadicComb> impl_;
};

struct TensorTerm {
  Function1D u;
  Function1D v;
};

class TensorSum2D {
 public:
  TensorSum2D() = default;
  explicit TensorSum2D(std::vector<TensorTerm> terms) : terms_(std::move(terms)) {}

  [[nodiscard]] const std::vector<TensorTerm>& terms() const { return terms_; }
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] double eval(double x, double y) const;
  [[nodiscard]] TensorSum2D transposed() const;
  [[nodiscard]] TensorSum2D scaled(double c) const;

 private:
  std::vector<TensorTerm> terms_;
};

/// F(b, y) - F(a, y).
double increment_x(const TensorSum2D& f, const Interval& i, double y);
/// F(x, d) - F(x, c).
double increment_y(const TensorSum2D& f, double x, const Interval& j);
/// F(a,c) - F(a,d) - F(b,c) + F(b,d), evaluated per term as u(I) v(J).
double rect_increment(const TensorSum2D& f, const Rectangle& r);

}  // namespace gvar
