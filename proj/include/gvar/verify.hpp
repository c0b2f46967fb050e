#pragma once

// The reproduction suite: randomized oracle agreement, the two theorems'
// finite inequality chains and the condition checker, as named assertions.
// Shared by the `verify` subcommand and the acceptance test.

#include <cstdint>
#include <string>
#include <vector>

#include "gvar/sequences.hpp"

namespace gvar {

struct AssertionResult {
  std::string id;
  std::string description;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  /// Reported for context only; never counted as pass or fail.
  bool info = false;
  std::string detail;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  std::vector<AssertionResult> assertions;
  double seconds = 0.0;     // wall time; not written by `verify`
  double time_limit = 0.0;  // seconds

  [[nodiscard]] bool pass() const;
  [[nodiscard]] bool within_time() const { return time_limit <= 0.0 || seconds <= time_limit; }
};

struct VerifyConfig {
  std::uint64_t seed = 42;

  LambdaParams th1_lambda;  // harmonic
  ExponentParams th1_p{ExponentKind::loglog};
  int th1_k = 4;
  std::uint64_t th1_search_cap = 1'000'000;
  std::uint64_t th1_trials = 200;

  LambdaParams th2_lambda;                                  // harmonic
  ExponentParams th2_p{ExponentKind::linear, 1.0, 0.0, 1.0};  // p(n) = n
  int th2_k = 6;
  int th2_l_max = 12;
  int th2_dp_depth = 8;

  std::uint64_t assignment_lists = 1000;
  std::uint64_t lambda_functions = 200;
  std::uint64_t wiener_functions = 100;
  std::uint64_t tensor_instances = 50;
};

CriterionResult criterion_assignment(const VerifyConfig& cfg);
CriterionResult criterion_lambda_1d(const VerifyConfig& cfg);
CriterionResult criterion_wiener(const VerifyConfig& cfg);
CriterionResult criterion_tensor(const VerifyConfig& cfg);
CriterionResult criterion_theorem1(const VerifyConfig& cfg);
CriterionResult criterion_theorem2(const VerifyConfig& cfg);
CriterionResult criterion_condition2(const VerifyConfig& cfg);

/// Criteria 1-7 in order.
std::vector<CriterionResult> run_verify_suite(const VerifyConfig& cfg);

/// Feasible instances of the Theorem 1 constructions (case a with a designed
/// table, case b with p(n) = n / (2 log2(n+1))), reported next to the suite.
CriterionResult supplementary_constructions(const VerifyConfig& cfg);

/// The lambda table and exponent of the case-a instance.
LambdaParams case_a_demo_lambda();
ExponentParams case_a_demo_p();
int case_a_demo_k();
ExponentParams case_b_demo_p();
int case_b_demo_k();

}  // namespace gvar
