#pragma once

// Finite truncations of the counterexample functions used in the inclusion
// theorems, the index searches behind them, and closed-form certificates for
// each inequality chain. Nothing here enumerates teeth: counts and sums are
// closed form, in log space where they can exceed double range.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gvar/functions.hpp"
#include "gvar/sequences.hpp"

namespace gvar {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SelectionMode { case_a, case_b, theorem2 };
std::string to_string(SelectionMode m);

/// One selected index. For case a / case b: the index n_k, m(n_k), the ratio
/// there and the amplitude h_k (d_k). For theorem2: l_k and c_k.
struct IndexEntry {
  int k = 0;
  std::uint64_t index = 0;
  double p = 0.0;
  MValue m;
  LogReal ratio;
  double amplitude = 0.0;
  double log_amplitude = 0.0;
};

struct IndexSelection {
  SelectionMode mode = SelectionMode::case_a;
  std::vector<IndexEntry> entries;  // k = 1..K
  /// Case b: the terms start at k0 + 2; n_0 is taken as 0.
  int k0 = 0;
  std::vector<std::string> notes;

  [[nodiscard]] std::vector<std::uint64_t> indices() const;
  [[nodiscard]] std::size_t size() const { return entries.size(); }
};

struct SelectOptions {
  std::uint64_t search_cap = 1'000'000;
  /// Run check_condition_2 first and refuse unless its verdict is divergent.
  bool check_premise = true;
  std::uint64_t premise_n_max = 20;
};

/// Minimal increasing indices with ratio(n_k) >= 4^k, p(n_k) >= n_{k-1} and
/// n_k > 3 n_{k-1} + 1, then classified: case a when every consecutive pair
/// satisfies 2^{2 n_{k-1}} < m(n_k) <= 2^{n_k - n_{k-1} - 1}, case b otherwise.
/// Throws ConstructionError naming the first constraint that cannot be met.
IndexSelection select_indices(const LambdaSequence& lambda, const ExponentSequence& p, int K,
                              const SelectOptions& opts = {});

/// l_1 = 1 and, for k >= 2, l_k the smallest index above l_{k-1} with
/// p(l_k) >= ln(k + 1), so that p(l_{k-1}) >= ln k holds for every k <= K.
IndexSelection select_lk(const ExponentSequence& p, int K, std::uint64_t search_cap = 1 << 20);

/// Independent re-check of a selection against lambda and p. Returns the
/// violated invariants (empty when valid).
std::vector<std::string> validate_selection(const IndexSelection& sel, const LambdaSequence& lambda,
                                            const ExponentSequence& p);

struct Construction {
  SelectionMode kind = SelectionMode::case_a;
  IndexSelection selection;
  TensorSum2D f;
  std::vector<int> term_k;  // k of each tensor term
};

/// sum_{k=2}^K f_k (x) f_k(y), f_k the comb at scale s_k with teeth
/// j = m(s_{k-1}) .. m(s_k) - 1 and height h_k.
Construction build_case_a(const LambdaSequence& lambda, const ExponentSequence& p, const IndexSelection& sel);
/// sum_{k=k0+2}^K g_k (x) g_k(y), g_k the comb at scale n_k with teeth
/// j = 2^{n_{k-1} - n_{k-2}} .. 2^{n_k - n_{k-1} - 1} - 1 and height d_k.
Construction build_case_b(const LambdaSequence& lambda, const ExponentSequence& p, const IndexSelection& sel);
/// sum_{k=1}^K r_k(x) r_k(y), r_k the tent 0 at 2^-l_k, c_k at 3 2^-(l_k+1),
/// 0 at 2^-(l_k-1), with c_k = (sum_{j<=k} 1/lambda_j)^(-1/4).
Construction build_r(const LambdaSequence& lambda, const IndexSelection& sel);

enum class CertificateKind { lambda_sharp_upper, wiener_upper, lambda_sharp_lower_sum, wiener_sharp_lower };
std::string to_string(CertificateKind k);

struct CertificateTerm {
  int k = 0;
  double value = 0.0;
  double log_value = 0.0;
};

/// total combines the terms according to formula_id:
///   "upper-4-sum"      total = 4 * sum of terms
///   "p-norm"           total = (sum of terms^p)^(1/p)
///   "sum"              total = sum of terms
///   "single"           total = the single term
/// `bound` is the comparison quantity of the chain (a lower bound the total
/// must reach, or an upper bound it must stay under), `floor` the next link
/// and `constant` the explicit constant in it.
struct ConstructionCertificate {
  CertificateKind kind = CertificateKind::lambda_sharp_upper;
  std::string formula_id;
  std::vector<CertificateTerm> terms;
  double p = 1.0;
  double total = 0.0;
  double log_total = 0.0;
  double bound = 0.0;
  double floor = 0.0;
  double constant = 1.0;
  bool holds = false;
  std::string note;
};

/// Recombines the terms of a certificate according to its formula.
double recompute_total(const ConstructionCertificate& c);

/// Closed-form value of the single-row witness at level k (intervals
/// ((2j-1)/2^s_k, 2j/2^s_k), y_j = 2j/2^s_k over the teeth of term k) and
/// its chain: value = c ratio(s_k) / 2^k >= c 2^k.
ConstructionCertificate witness_lower_case_a(const Construction& c, const ExponentSequence& p, int k);
/// Same for case b: value >= (1/4) d_k^2 2^{(n_k - n_{k-1})/p} = c ratio / 2^k >= c 2^k.
ConstructionCertificate witness_lower_case_b(const Construction& c, const ExponentSequence& p, int k);
/// The witness of witness_lower_case_* as explicit intervals and ys, when
/// it has at most `limit` intervals.
struct RowWitness {
  std::vector<Interval> intervals;
  std::vector<double> ys;
};
RowWitness witness_row(const Construction& c, int k, std::size_t limit = 1 << 16);

/// 4 sum_k amp_k^2 sum_{j<=m_k} 1/lambda_j, per-k terms 2^-k (case b: the
/// inner sum runs over the tooth count, so the terms are at most 2^-k).
ConstructionCertificate certificate_upper_lambda_sharp(const Construction& c, const LambdaSequence& lambda);

/// sum_{j<=k} c_j^2 / lambda_j against (sum_{j<=k} 1/lambda_j)^(1/2).
ConstructionCertificate witness_lower_r(const LambdaSequence& lambda, const IndexSelection& sel, int k);
/// The same sum read off the function itself: |r(I_j, y_j)| / lambda_j with
/// I_j = (2^-l_j, 3 2^-(l_j+1)) and y_j = 3 2^-(l_j+1).
double witness_lower_r_evaluated(const Construction& c, const LambdaSequence& lambda, int k);
/// Partitions with gaps >= 2^-l: (sum_{j<=k} (2 c_j^2)^p(l))^(1/p(l)) with
/// l_{k-1} <= l < l_k, bounded by 2 k^(1/p(l_{k-1})) <= 4e.
ConstructionCertificate r_wiener_certificate(const LambdaSequence& lambda, const ExponentSequence& p,
                                             const IndexSelection& sel, std::uint64_t l);
/// sum_k 2^{l_k+1} c_k^2, a Lipschitz constant of r in each variable.
double r_lipschitz_constant(const LambdaSequence& lambda, const IndexSelection& sel);

}  // namespace gvar
