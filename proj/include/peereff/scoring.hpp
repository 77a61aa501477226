#pragma once

// Weight-factor scoring: per-response WF vectors, journal-level aggregation,
// the two composite efficiency measures and descriptive statistics.
//
// E1 is the arithmetic-mean measure: mean WF as a percentage of the maximal
// mean (4). E2 is the geometric measure: the area of the six-axis radar
// polygon (axes in question order) as a percentage of the all-4 hexagon.

#include <numbers>
#include <optional>
#include <span>
#include <string>

#include "peereff/survey.hpp"

namespace peereff {

// Area of the radar hexagon when all six weight factors sit at the scale
// ceiling of 4: 6 triangles of (1/2)*4*4*sin(60 deg) = 24*sqrt(3).
inline constexpr double kHexagonAreaMax = 24.0 * std::numbers::sqrt3;

// Six integer WF levels in question order for a single response.
// Throws if any answer is missing or unmappable.
WfVector wf_vector(const EditorResponse& response,
                   const QuestionnaireSchema& schema);

// Component-wise arithmetic mean over a non-empty set of WF vectors
// ("average WFs" for a journal handled by several editors).
WfVector aggregate_journal(std::span<const WfVector> vectors);

// Mean-WF measure as a percentage of the maximum, in [25,100].
double e1_percent(const WfVector& wf);

// Area of the radar polygon with six equiangular axes in question order:
// (1/2)*sin(60 deg) * sum of adjacent-component products (cyclic).
double hexagon_area(const WfVector& wf);

// Hexagon-area measure as a percentage of the all-4 area, in (0,100].
double e2_percent(const WfVector& wf);

struct EfficiencySummary {
  std::string subject_id;  // editor or journal
  WfVector wf;
  double sum_wf = 0.0;
  double mean_wf = 0.0;
  double e1_percent = 0.0;
  double hexagon_area_au = 0.0;  // arbitrary units
  double e2_percent = 0.0;
};

EfficiencySummary efficiency_summary(std::string subject_id,
                                     const WfVector& wf);

struct DescriptiveStats {
  double mean = 0.0;
  std::optional<double> sd;  // sample (n-1); absent when n < 2
  std::optional<double> cv;  // sd/mean; absent when sd is or mean == 0
  double max = 0.0;
  std::size_t n = 0;
};

// Throws std::invalid_argument on an empty series.
DescriptiveStats descriptive_stats(std::span<const double> series);

}  // namespace peereff
