#pragma once

// Brute-force enumerators for small instances. Slow on purpose and kept
// separate from the estimators they check.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gvar/functions.hpp"
#include "gvar/sequences.hpp"

namespace gvar::oracle {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kMaxConfigurations = 10'000'000;

struct GridSpec {
  int depth = 4;                 // <= 6; points k / 2^depth
  int max_intervals = 6;         // <= 6
  int max_partition_points = 10; // <= 10
  int max_rectangles = 4;        // <= 4

  void validate() const;
};

double brute_assignment(const std::vector<double>& values, const LambdaSequence& lambda);

/// Intervals with endpoints on the closed grid in [0, 1].
double brute_lambda_1d(const Function1D& f, const LambdaSequence& lambda, const GridSpec& grid);
/// Cyclic partitions drawn from the 2^depth grid points of [0, 1).
double brute_wiener_1d(const Function1D& f, double p, std::uint64_t n, const GridSpec& grid);
/// Interval collections on the closed x grid, every y_i on the open y grid.
double brute_sharp_v1(const TensorSum2D& f, const LambdaSequence& lambda, const GridSpec& grid);
/// All row and column orderings of a matrix of at most 5 x 5.
double brute_v12_matrix(const std::vector<std::vector<double>>& m, const LambdaSequence& lambda);
/// All pairs of interval collections on the closed grids (depth <= 2), all orderings.
double brute_v12(const TensorSum2D& f, const LambdaSequence& lambda, const GridSpec& grid);
/// All collections of at most max_rectangles nonoverlapping grid rectangles, all orderings.
double brute_star(const TensorSum2D& f, const LambdaSequence& lambda, const GridSpec& grid);
/// Cyclic partitions from the open x grid, every y_i on the open y grid.
double brute_wiener_sharp_v1(const TensorSum2D& f, double p, std::uint64_t n, const GridSpec& grid);

}  // namespace gvar::oracle
