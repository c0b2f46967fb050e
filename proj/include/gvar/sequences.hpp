#pragma once

// Weight sequences (lambda_n), exponent sequences (p(n)), the partial sums and
// ratios built from them, and finite-range trend reports for the limit
// conditions that the inclusion theorems are stated in terms of.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gvar/numeric.hpp"

namespace gvar {

class SequenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LambdaKind { harmonic, n_gamma, power_log, power, table };
enum class TableExtension { reject, repeat_last_growth };

/// lambda_n = scale * base(n) + shift, where base depends on the kind:
///   harmonic   n
///   n_gamma    n / ln(n+2)^beta          (gamma_n = 1/ln(n+2)^beta)
///   power_log  n / ln(n+1)^alpha
///   power      n^exponent
/// or an explicit table with an extension rule.
struct LambdaParams {
  LambdaKind kind = LambdaKind::harmonic;
  double scale = 1.0;
  double shift = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double exponent = 1.0;
  std::vector<double> values;
  TableExtension extend = TableExtension::reject;
};

/// A nondecreasing positive weight sequence with cached reciprocal partial
/// sums. Immutable after construction; the cache is internally synchronized,
/// so one instance can be shared by concurrent readers.
class LambdaSequence {
 public:
  /// Validates positivity and monotonicity (on the table, or on a prefix of
  /// 4096 terms plus log-spaced samples for closed forms). Throws SequenceError.
  explicit LambdaSequence(LambdaParams params);

  /// Skips validation. Used to report on user-supplied tables that may be
  /// broken (see check_lambda_admissible).
  static LambdaSequence unchecked(LambdaParams params);

  static LambdaSequence harmonic(double scale = 1.0, double shift = 0.0);
  static LambdaSequence n_gamma(double beta, double shift = 0.0);
  static LambdaSequence power_log(double alpha, double shift = 0.0);
  static LambdaSequence power(double exponent, double shift = 0.0);
  static LambdaSequence table(std::vector<double> values, TableExtension extend);

  [[nodiscard]] const LambdaParams& params() const { return params_; }
  [[nodiscard]] LambdaKind kind() const { return params_.kind; }
  [[nodiscard]] bool closed_form() const { return params_.kind != LambdaKind::table; }
  /// Largest queryable index, if bounded (reject-rule tables).
  [[nodiscard]] std::optional<std::uint64_t> max_index() const;
  /// True when lambda_1 <= 1, i.e. the strict start condition does not hold.
  /// Accepted (all formulas stay well defined) but reported.
  [[nodiscard]] bool start_flag() const { return value(1) <= 1.0; }

  /// lambda_n for n >= 1.
  [[nodiscard]] double value(std::uint64_t n) const;
  /// gamma_n = lambda_n / n.
  [[nodiscard]] double gamma(std::uint64_t n) const { return value(n) / static_cast<double>(n); }

  /// sum_{j=1}^m 1/lambda_j, relative accuracy ~1e-9 or better. Term-by-term
  /// (compensated, cached) up to 2^22, Euler-Maclaurin tail beyond that.
  [[nodiscard]] double reciprocal_partial_sum(std::uint64_t m) const;
  /// Same sum for m = exp(log_m), which may be far beyond integer range.
  /// For m below 2^53 the argument is rounded to the nearest integer.
  [[nodiscard]] LogReal reciprocal_partial_sum_log(double log_m) const;
  /// Euler-Maclaurin evaluation anchored at an exact prefix of length n0.
  /// Exposed so the tail formula can be checked against direct summation.
  [[nodiscard]] double reciprocal_partial_sum_em(double m, std::uint64_t n0) const;

 private:
  struct Cache;
  LambdaSequence(LambdaParams params, bool validate);
  void validate() const;
  [[nodiscard]] double direct_sum(std::uint64_t m) const;
  [[nodiscard]] double tail_integral(double log_a, double log_b) const;
  [[nodiscard]] double weight_real(double t) const;  // 1/lambda(t), continuous extension

  LambdaParams params_;
  std::shared_ptr<Cache> cache_;
};

enum class ExponentKind { constant, linear, log, loglog, n_over_log, table };

/// p(n) for n >= 1:
///   constant   p
///   linear     a + b n
///   log        1 + ln(n+1)
///   loglog     1 + ln(1 + ln(1+n))
///   n_over_log max(1, n / (c log2(n+1)))
///   table      explicit prefix; beyond it "hold" repeats the last value,
///              "reject" throws
struct ExponentParams {
  ExponentKind kind = ExponentKind::constant;
  double p = 1.0;
  double a = 0.0;
  double b = 1.0;
  double c = 2.0;
  std::vector<double> values;
  bool hold = true;
};

class ExponentSequence {
 public:
  explicit ExponentSequence(ExponentParams params);

  static ExponentSequence constant(double p);
  static ExponentSequence linear(double a, double b);
  static ExponentSequence log();
  static ExponentSequence loglog();
  static ExponentSequence n_over_log(double c);
  static ExponentSequence table(std::vector<double> values, bool hold = true);

  [[nodiscard]] const ExponentParams& params() const { return params_; }
  [[nodiscard]] ExponentKind kind() const { return params_.kind; }
  [[nodiscard]] double value(std::uint64_t n) const;
  /// Limit of p(n); +inf for unbounded kinds.
  [[nodiscard]] double limit() const;

 private:
  ExponentParams params_;
};

enum class Verdict { bounded_trend, divergent_trend, inconclusive };
std::string to_string(Verdict v);

struct ReportRow {
  std::uint64_t n = 0;
  double quantity = 0.0;
};

struct ConditionReport {
  std::string condition_id;
  std::vector<ReportRow> rows;
  Verdict verdict = Verdict::inconclusive;
  double sup_observed = 0.0;
  std::uint64_t n_first = 0;
  std::uint64_t n_last = 0;
  /// False when a checked invariant failed (e.g. non-monotone lambda).
  bool invariant_ok = true;
  std::optional<std::uint64_t> failed_index;
  std::vector<std::string> notes;
};

/// Verdict thresholds. Limit conditions are reported as trends over the
/// finite table, never as truth values.
namespace trend {
/// Tables shorter than this are always inconclusive.
inline constexpr std::size_t kMinRows = 16;
/// bounded: max over the last quarter <= kPlateau * max over the second quarter.
inline constexpr double kPlateau = 1.05;
/// divergent: min over the last quarter >= kGrowth * max over the second quarter,
inline constexpr double kGrowth = 2.0;
/// or the elasticity of the quantity with respect to ln n (slope of ln q
/// against ln ln n over the last half) is at least kLogSlope, i.e. the
/// quantity grows logarithmically or faster.
inline constexpr double kLogSlope = 0.5;
/// Series are judged by Cauchy condensation: dyadic block sums B_j ~ j^-beta.
/// beta <= kDivergentBeta is divergent, beta >= kConvergentBeta convergent.
inline constexpr double kDivergentBeta = 1.25;
inline constexpr double kConvergentBeta = 1.5;
/// Fewer dyadic blocks than this is inconclusive.
inline constexpr int kMinBlocks = 6;
}  // namespace trend

/// Applies the quantity-trend rule to rows ordered by n.
Verdict quantity_trend(const std::vector<ReportRow>& rows);
/// A dyadic block of a series: `sum` over n in [2^j, 2^{j+1}).
struct SeriesBlock {
  double j = 0.0;
  double sum = 0.0;
};
/// Least-squares slope of -ln B_j against ln(j+1) over the last half of the
/// blocks (all of them when there are fewer than four).
double condensation_exponent(const std::vector<SeriesBlock>& blocks);
Verdict series_trend(const std::vector<SeriesBlock>& blocks, std::size_t min_blocks);

/// Integer m that may exceed 64 bits: log is always valid, exact when known.
struct MValue {
  double log_m = 0.0;
  std::optional<std::uint64_t> exact;
};

struct MOfN {
  MValue m;
  LogReal ratio;
  bool endpoint = false;  // m == 2^n
};

enum class SearchMode { automatic, exhaustive, analytic };

/// Exhaustive search is used up to this n; table kinds cannot go beyond it.
inline constexpr std::uint64_t kExhaustiveMaxN = 22;

/// m^{1/p(n)} / sum_{j<=m} 1/lambda_j for 1 <= m <= 2^n.
LogReal ratio(const LambdaSequence& lambda, const ExponentSequence& p, std::uint64_t n, std::uint64_t m);
/// Same with m = exp(log_m), for n beyond 63.
LogReal ratio_log_m(const LambdaSequence& lambda, const ExponentSequence& p, std::uint64_t n, double log_m);

/// argmax over 1 <= m <= 2^n of the ratio; ties go to the smallest m
/// (relative tolerance 1e-12).
MOfN m_of_n(const LambdaSequence& lambda, const ExponentSequence& p, std::uint64_t n,
            SearchMode mode = SearchMode::automatic);

ConditionReport check_condition_2(const LambdaSequence& lambda, const ExponentSequence& p, std::uint64_t n_max);
ConditionReport check_lambda_admissible(const LambdaSequence& lambda, std::uint64_t n);
ConditionReport check_cond1(const LambdaSequence& lambda, std::uint64_t n_max);
/// Two reports: "T1-1/T1-11" (partial sums of gamma_n/n, series verdict) and
/// "T1-10" (gamma_n / gamma_{n^floor(1+delta)}, boundedness verdict).
std::vector<ConditionReport> check_t1_conditions(const LambdaSequence& lambda, std::uint64_t n_max, double delta);

}  // namespace gvar
