#pragma once

// Statistical machinery for the analysis pipeline: Pearson correlation with
// strength classification, Kendall tau-b rank coherence, Mann-Whitney U group
// comparison and rank-size law fitting.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace peereff {

inline constexpr double kStrongCorrelationThreshold = 0.75;
inline constexpr double kSignificanceLevel = 0.05;

struct CorrelationResult {
  double r = 0.0;
  std::size_t n = 0;
  bool strong = false;  // r >= 0.75 (signed threshold)
};

// Product-moment correlation. Preconditions: equal lengths, n >= 3.
// Throws std::invalid_argument on a length mismatch or undersized input and
// std::domain_error when either series is constant.
CorrelationResult pearson(std::span<const double> x,
                          std::span<const double> y);

struct RankCoherence {
  double tau_b = 0.0;
  std::size_t n = 0;
  // Pair counts over the n(n-1)/2 unordered pairs. ties_x / ties_y count
  // pairs tied on that variable (pairs tied on both are included in each
  // and counted once in ties_xy).
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
  std::int64_t ties_x = 0;
  std::int64_t ties_y = 0;
  std::int64_t ties_xy = 0;
};

// Tie-corrected rank correlation:
//   tau_b = (C - D) / sqrt((n0 - Tx) * (n0 - Ty)),  n0 = n(n-1)/2.
// Discordant pairs are counted by merge-sort inversion counting after
// sorting by (x, y). Throws std::invalid_argument for n < 2 or mismatched
// lengths and std::domain_error when a denominator factor is zero.
RankCoherence kendall_tau_b(std::span<const double> x,
                            std::span<const double> y);

struct GroupTestResult {
  double u_statistic = 0.0;  // U for the first sample, in [0, n1*n2]
  double z = 0.0;            // tie-corrected normal approximation
  double p_two_sided = 1.0;
  bool significant = false;  // p < 0.05
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

// Rank-sum U with midrank ties; two-sided p from the tie-corrected normal
// approximation with continuity correction. Throws std::invalid_argument
// when either sample is empty.
GroupTestResult mann_whitney_u(std::span<const double> a,
                               std::span<const double> b);

enum class FitModel { Power, Linear };

struct RankSizeFit {
  FitModel model = FitModel::Linear;
  // Power: value = a * rank^b. Linear: value = a + b * rank.
  double a = 0.0;
  double b = 0.0;
  double r_squared = 0.0;  // in the fitted space (log-log for Power)
  std::vector<double> ranked_values;  // input sorted descending, ranks 1..n
};

// Sorts values descending, assigns ranks 1..n and fits the requested model
// by ordinary least squares (on (ln rank, ln value) for Power). Requires
// n >= 3; Power additionally requires all values > 0 (std::domain_error).
RankSizeFit rank_size_fit(std::span<const double> values, FitModel model);

enum class Measure { E1, E2 };

std::string to_string(Measure measure);

struct GroupSeries {
  std::string name;
  std::vector<double> values;
};

struct PairwiseComparison {
  std::string group_a;
  std::string group_b;
  Measure measure = Measure::E1;
  GroupTestResult test;
};

// One Mann-Whitney comparison per unordered pair of groups, in input order.
// Requires at least two non-empty groups.
std::vector<PairwiseComparison> compare_groups(
    std::span<const GroupSeries> groups, Measure measure);

}  // namespace peereff
