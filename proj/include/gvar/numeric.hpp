#pragma once

// Small numeric helpers shared by every module: compensated summation,
// log-space arithmetic and deterministic number formatting.

#include <cmath>
#include <limits>
#include <span>
#include <string>

namespace gvar {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

/// A positive real that may be far outside double range. `log` is always
/// valid (natural log, -inf for zero); `linear()` is +inf when unrepresentable.
struct LogReal {
  double log = -std::numeric_limits<double>::infinity();

  static LogReal from_linear(double x) { return LogReal{x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity()}; }
  static LogReal from_log(double lx) { return LogReal{lx}; }
  static LogReal zero() { return LogReal{}; }

  [[nodiscard]] bool is_zero() const { return std::isinf(log) && log < 0.0; }
  [[nodiscard]] bool representable() const { return log < 709.0; }
  [[nodiscard]] double linear() const { return std::exp(log); }

  friend LogReal operator*(LogReal a, LogReal b) { return LogReal{a.log + b.log}; }
  friend LogReal operator/(LogReal a, LogReal b) { return LogReal{a.log - b.log}; }
  friend bool operator<(LogReal a, LogReal b) { return a.log < b.log; }
};

/// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);
/// log(exp(a) - exp(b)) for a >= b.
double log_sub(double a, double b);

/// (sum |x_i|^p)^(1/p), scaled by the max magnitude so large p cannot overflow.
double power_norm(std::span<const double> xs, double p);

/// Relative closeness with an absolute floor for values near zero.
bool close_rel(double a, double b, double rel, double abs_floor = 1e-300);

/// Shortest round-trip text for a double; "inf"/"-inf"/"nan" for specials.
/// Locale-independent, so CSV and JSON output is byte-stable.
std::string format_double(double x);

}  // namespace gvar
