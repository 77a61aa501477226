#include "peereff/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace peereff {

WfVector wf_vector(const EditorResponse& response,
                   const QuestionnaireSchema& schema) {
  std::array<double, 6> levels{};
  for (int q = 1; q <= 6; ++q) {
    const auto& answer = response.answers[static_cast<std::size_t>(q - 1)];
    if (!answer.has_value()) {
      throw std::invalid_argument("editor " + response.editor_id +
                                  ": missing answer to question " +
                                  std::to_string(q));
    }
    levels[static_cast<std::size_t>(q - 1)] =
        static_cast<double>(map_choice_to_wf(schema.question(q), *answer));
  }
  return WfVector(levels);
}

WfVector aggregate_journal(std::span<const WfVector> vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("cannot aggregate an empty set of WF vectors");
  }
  std::array<double, 6> mean{};
  for (const WfVector& wf : vectors) {
    for (std::size_t i = 0; i < 6; ++i) mean[i] += wf[i];
  }
  for (double& m : mean) m /= static_cast<double>(vectors.size());
  return WfVector(mean);
}

double e1_percent(const WfVector& wf) { return wf.mean() / 4.0 * 100.0; }

double hexagon_area(const WfVector& wf) {
  constexpr double half_sin60 = 0.5 * std::numbers::sqrt3 / 2.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    cross += wf[i] * wf[(i + 1) % 6];
  }
  return half_sin60 * cross;
}

double e2_percent(const WfVector& wf) {
  return hexagon_area(wf) / kHexagonAreaMax * 100.0;
}

EfficiencySummary efficiency_summary(std::string subject_id,
                                     const WfVector& wf) {
  EfficiencySummary summary;
  summary.subject_id = std::move(subject_id);
  summary.wf = wf;
  summary.sum_wf = wf.sum();
  summary.mean_wf = wf.mean();
  summary.e1_percent = e1_percent(wf);
  summary.hexagon_area_au = hexagon_area(wf);
  summary.e2_percent = e2_percent(wf);
  return summary;
}

DescriptiveStats descriptive_stats(std::span<const double> series) {
  if (series.empty()) {
    throw std::invalid_argument("descriptive_stats: empty series");
  }
  DescriptiveStats stats;
  stats.n = series.size();
  stats.max = *std::max_element(series.begin(), series.end());

  double sum = 0.0;
  for (double v : series) sum += v;
  stats.mean = sum / static_cast<double>(series.size());

  if (series.size() >= 2) {
    double ss = 0.0;
    for (double v : series) {
      const double d = v - stats.mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(series.size() - 1));
    stats.sd = sd;
    if (stats.mean != 0.0) stats.cv = sd / stats.mean;
  }
  return stats;
}

}  // namespace peereff
