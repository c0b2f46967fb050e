#pragma once

// Witness-certified lower bounds for the variation functionals of 1D and 2D
// periodic functions. Every estimate carries the collection that attains it.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gvar/functions.hpp"
#include "gvar/sequences.hpp"

namespace gvar {

enum class EstimateMode { exact_closed_form, oracle_verified, lower_bound };
std::string to_string(EstimateMode m);

struct SearchBudget {
  int grid_depth = 4;     // dyadic grid 2^-depth on each axis
  int max_intervals = 8;  // interval collections hold at most this many intervals
  int restarts = 4;       // random restarts for the double-ordering heuristic
  std::uint64_t seed = 42;
  bool include_breakpoints = true;
  std::vector<DyadicRational> extra_x;
  std::vector<DyadicRational> extra_y;

  void validate() const;
};

/// What attains an estimate. Ordered lists pair their i-th entry with lambda_{i+1}.
struct Witness {
  std::vector<Interval> intervals;
  std::vector<double> ys;  // per interval (sharp), or a single slice y (lambda_v1)
  std::vector<Interval> intervals_y;
  std::vector<Rectangle> rectangles;
  std::vector<double> points;  // cyclic partition
  /// Closed-form collections too large to list: count intervals, each with
  /// increment magnitude `uniform_height` times `uniform_scale`.
  std::uint64_t uniform_count = 0;
  double uniform_height = 0.0;
  double uniform_scale = 1.0;
  std::uint64_t uniform_count_y = 0;  // same for the y collection (lambda_v12)
  double uniform_height_y = 0.0;
  bool transposed = false;  // witness refers to F transposed (the "2" functionals)
};

struct VariationEstimate {
  std::string functional;
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  EstimateMode mode = EstimateMode::lower_bound;
  Witness witness;
  double p = 0.0;      // Wiener functionals
  std::uint64_t n = 0; // Wiener functionals
};

/// Sorts descending and pairs with lambda_1, lambda_2, ... (optimal ordering).
double optimal_assignment(std::vector<double> increments, const LambdaSequence& lambda);

/// max over row and column orderings of sum_ij m[i][j] / (lambda_i lambda_j).
/// Exact (permutations of the shorter side, optimal sort of the other) when
/// the shorter side has at most 7 entries; alternating sorts with random
/// restarts otherwise. Returns the value and the row/column orders.
struct DoubleAssignment {
  double value = 0.0;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  bool exact = false;
};
DoubleAssignment double_assignment(const std::vector<std::vector<double>>& m, const LambdaSequence& lambda,
                                   const SearchBudget& budget);

VariationEstimate lambda_variation_1d(const Function1D& f, const LambdaSequence& lambda, const SearchBudget& budget);
VariationEstimate wiener_variation_1d(const Function1D& f, const ExponentSequence& p, std::uint64_t n,
                                      const SearchBudget& budget);
/// Values for n = 1..n_max and their supremum.
struct WienerProfile {
  std::vector<VariationEstimate> per_n;
  double sup = 0.0;
};
WienerProfile wiener_profile(const Function1D& f, const ExponentSequence& p, std::uint64_t n_max,
                             const SearchBudget& budget);

VariationEstimate lambda_v1(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget);
VariationEstimate lambda_v2(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget);
VariationEstimate lambda_sharp_v1(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget);
VariationEstimate lambda_sharp_v2(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget);
VariationEstimate lambda_v12(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget);
VariationEstimate lambda_star_v(const TensorSum2D& f, const LambdaSequence& lambda, const SearchBudget& budget);
VariationEstimate wiener_sharp_v1(const TensorSum2D& f, const ExponentSequence& p, std::uint64_t n,
                                  const SearchBudget& budget);
VariationEstimate wiener_sharp_v2(const TensorSum2D& f, const ExponentSequence& p, std::uint64_t n,
                                  const SearchBudget& budget);

/// Re-evaluate a witness from scratch on the function it belongs to.
double witness_lambda_1d(const Function1D& f, const LambdaSequence& lambda, const Witness& w);
double witness_wiener_1d(const Function1D& f, double p, const Witness& w);
double witness_lambda_v1(const TensorSum2D& f, const LambdaSequence& lambda, const Witness& w);
double witness_sharp_v1(const TensorSum2D& f, const LambdaSequence& lambda, const Witness& w);
double witness_v12(const TensorSum2D& f, const LambdaSequence& lambda, const Witness& w);
double witness_star(const TensorSum2D& f, const LambdaSequence& lambda, const Witness& w);
double witness_wiener_sharp(const TensorSum2D& f, double p, const Witness& w);

/// (sum_k |x_k|^p)^(1/p) computed with max-normalization; log of it.
double log_p_norm(const std::vector<double>& xs, double p);

struct InequalityReport {
  std::uint64_t trials = 0;
  double max_ratio = 0.0;  // max LHS / RHS observed
  double rhs = 0.0;        // upper_cert * sup_m ratio
  bool ok = true;
  std::vector<double> worst_points;
  std::vector<double> worst_ys;
};
/// Random admissible partitions at scale n (half on the 2^-n grid with dyadic
/// y, half with real gaps and uniform y). Checks
/// (sum |F(I_k, y_k)|^p(n))^(1/p(n)) <= upper_cert * max_m m^(1/p(n)) / S(m).
InequalityReport inequality_check_th1(const TensorSum2D& f, const LambdaSequence& lambda, const ExponentSequence& p,
                                      std::uint64_t n, std::uint64_t trials, std::uint64_t seed, double upper_cert);

}  // namespace gvar
