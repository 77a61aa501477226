#include "peereff/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace peereff {

namespace {

double normal_sf(double z) {
  // Upper tail of the standard normal distribution.
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

// Counts strict inversions in y (pairs i<j with y[i] > y[j]) via merge sort.
std::int64_t count_inversions(std::vector<double>& y) {
  const std::size_t n = y.size();
  if (n < 2) return 0;
  std::vector<double> buffer(n);
  std::int64_t inversions = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      const std::size_t mid = lo + width;
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (y[j] < y[i]) {
          inversions += static_cast<std::int64_t>(mid - i);
          buffer[k++] = y[j++];
        } else {
          buffer[k++] = y[i++];
        }
      }
      while (i < mid) buffer[k++] = y[i++];
      while (j < hi) buffer[k++] = y[j++];
      std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo),
                buffer.begin() + static_cast<std::ptrdiff_t>(hi),
                y.begin() + static_cast<std::ptrdiff_t>(lo));
    }
  }
  return inversions;
}

// Sum of t*(t-1)/2 over runs of equal values in a sorted range.
std::int64_t tied_pairs(std::vector<double> sorted) {
  std::int64_t total = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<std::int64_t>(j - i);
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

struct OlsFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 1.0;  // zero-variance target with zero residuals -> 1
};

OlsFit ols(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  OlsFit fit;
  fit.slope = sxy / sxx;  // ranks are never constant, sxx > 0
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = fit.intercept + fit.slope * x[i];
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - my) * (y[i] - my);
  }
  if (ss_tot > 0.0) {
    fit.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  }
  return fit;
}

}  // namespace

CorrelationResult pearson(std::span<const double> x,
                          std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("pearson: series length mismatch");
  }
  if (x.size() < 3) {
    throw std::invalid_argument("pearson: need at least 3 observations");
  }
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::domain_error("pearson: correlation undefined for a constant "
                            "series");
  }
  CorrelationResult result;
  result.n = x.size();
  result.r = sxy / std::sqrt(sxx * syy);
  result.strong = result.r >= kStrongCorrelationThreshold;
  return result;
}

RankCoherence kendall_tau_b(std::span<const double> x,
                            std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("kendall_tau_b: series length mismatch");
  }
  const std::size_t n = x.size();
  if (n < 2) {
    throw std::invalid_argument("kendall_tau_b: need at least 2 observations");
  }

  std::vector<std::pair<double, double>> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = {x[i], y[i]};
  std::sort(pts.begin(), pts.end());

  RankCoherence rc;
  rc.n = n;
  const auto n0 =
      static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;

  // Tie counts from sorted runs.
  {
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = pts[i].first;
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[i];
    std::sort(ys.begin(), ys.end());
    rc.ties_x = tied_pairs(xs);
    rc.ties_y = tied_pairs(ys);

    std::int64_t both = 0;
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j < n && pts[j] == pts[i]) ++j;
      const auto t = static_cast<std::int64_t>(j - i);
      both += t * (t - 1) / 2;
      i = j;
    }
    rc.ties_xy = both;
  }

  // With points sorted by (x, y), inversions of the y sequence are exactly
  // the discordant pairs: x-tied runs are y-sorted and contribute none, and
  // y-ties across different x are not strict inversions.
  std::vector<double> y_by_x(n);
  for (std::size_t i = 0; i < n; ++i) y_by_x[i] = pts[i].second;
  rc.discordant = count_inversions(y_by_x);
  rc.concordant = n0 - rc.discordant - rc.ties_x - rc.ties_y + rc.ties_xy;

  const double denom_x = static_cast<double>(n0 - rc.ties_x);
  const double denom_y = static_cast<double>(n0 - rc.ties_y);
  if (denom_x <= 0.0 || denom_y <= 0.0) {
    throw std::domain_error("kendall_tau_b: undefined for an all-tied series");
  }
  rc.tau_b = static_cast<double>(rc.concordant - rc.discordant) /
             std::sqrt(denom_x * denom_y);
  return rc;
}

GroupTestResult mann_whitney_u(std::span<const double> a,
                               std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("mann_whitney_u: both samples must be "
                                "non-empty");
  }
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;

  // Midranks over the pooled sample; first n1 entries belong to sample a.
  std::vector<std::pair<double, std::size_t>> pooled(n);
  for (std::size_t i = 0; i < n1; ++i) pooled[i] = {a[i], i};
  for (std::size_t i = 0; i < n2; ++i) pooled[n1 + i] = {b[i], n1 + i};
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });

  std::vector<double> ranks(n);
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double midrank = (static_cast<double>(i + 1) +
                            static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[pooled[k].second] = midrank;
    const auto t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  double rank_sum_a = 0.0;
  for (std::size_t k = 0; k < n1; ++k) rank_sum_a += ranks[k];

  GroupTestResult result;
  result.n1 = n1;
  result.n2 = n2;
  result.u_statistic =
      rank_sum_a - static_cast<double>(n1) * static_cast<double>(n1 + 1) / 2.0;

  const double n1d = static_cast<double>(n1);
  const double n2d = static_cast<double>(n2);
  const double nd = static_cast<double>(n);
  const double mu = n1d * n2d / 2.0;
  const double variance =
      n1d * n2d / 12.0 * ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));

  if (variance <= 0.0) {
    // Every pooled value identical: no evidence of a difference.
    result.z = 0.0;
    result.p_two_sided = 1.0;
  } else {
    const double cc = std::max(std::abs(result.u_statistic - mu) - 0.5, 0.0);
    result.z = cc / std::sqrt(variance);
    result.p_two_sided = std::min(1.0, 2.0 * normal_sf(result.z));
  }
  result.significant = result.p_two_sided < kSignificanceLevel;
  return result;
}

std::string to_string(Measure measure) {
  return measure == Measure::E1 ? "E1" : "E2";
}

RankSizeFit rank_size_fit(std::span<const double> values, FitModel model) {
  if (values.size() < 3) {
    throw std::invalid_argument("rank_size_fit: need at least 3 values");
  }
  RankSizeFit fit;
  fit.model = model;
  fit.ranked_values.assign(values.begin(), values.end());
  std::sort(fit.ranked_values.begin(), fit.ranked_values.end(),
            std::greater<>());

  const std::size_t n = fit.ranked_values.size();
  std::vector<double> xs(n), ys(n);
  if (model == FitModel::Linear) {
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = static_cast<double>(i + 1);
      ys[i] = fit.ranked_values[i];
    }
    const OlsFit ols_fit = ols(xs, ys);
    fit.a = ols_fit.intercept;
    fit.b = ols_fit.slope;
    fit.r_squared = ols_fit.r_squared;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (fit.ranked_values[i] <= 0.0) {
        throw std::domain_error(
            "rank_size_fit: power-law fit requires positive values");
      }
      xs[i] = std::log(static_cast<double>(i + 1));
      ys[i] = std::log(fit.ranked_values[i]);
    }
    const OlsFit ols_fit = ols(xs, ys);
    fit.a = std::exp(ols_fit.intercept);
    fit.b = ols_fit.slope;
    fit.r_squared = ols_fit.r_squared;
  }
  return fit;
}

std::vector<PairwiseComparison> compare_groups(
    std::span<const GroupSeries> groups, Measure measure) {
  if (groups.size() < 2) {
    throw std::invalid_argument("compare_groups: need at least 2 groups");
  }
  for (const GroupSeries& g : groups) {
    if (g.values.empty()) {
      throw std::invalid_argument("compare_groups: group \"" + g.name +
                                  "\" is empty");
    }
  }
  std::vector<PairwiseComparison> results;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      PairwiseComparison cmp;
      cmp.group_a = groups[i].name;
      cmp.group_b = groups[j].name;
      cmp.measure = measure;
      cmp.test = mann_whitney_u(groups[i].values, groups[j].values);
      results.push_back(std::move(cmp));
    }
  }
  return results;
}

}  // namespace peereff
