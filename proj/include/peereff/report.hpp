#pragma once

// Deterministic figure and table rendering: radar charts and rank-size plots
// as SVG 1.1 text, efficiency tables as Markdown or CSV. Identical input
// yields byte-identical output (no timestamps, no randomness).

#include <array>
#include <span>
#include <string>
#include <vector>

#include "peereff/scoring.hpp"
#include "peereff/stats.hpp"

namespace peereff {

// Short criterion names in question order; used for radar axes and table
// column headers.
const std::array<std::string, 6>& default_axis_labels();

struct RadarSubject {
  std::string label;
  WfVector wf;
  std::string style;  // stroke color; empty -> palette by position
};

struct ChartSpec {
  std::string title;
  std::array<std::string, 6> axis_labels = default_axis_labels();
  double scale_max = 4.0;  // fixed by the WF scale
  int width_px = 480;
  int height_px = 480;
  std::vector<RadarSubject> subjects;
};

// Radar chart with six equiangular axes: first axis points up, axes proceed
// clockwise in question order; gridline hexagons sit at WF 1..4; one closed
// polygon per subject. Vertex i lies at distance (wf_i / 4) * R along axis i.
std::string render_radar_svg(const ChartSpec& spec);

struct RankSizeGroup {
  std::string label;
  RankSizeFit power;
  RankSizeFit linear;
};

// Rank-size scatter plus both fitted curves per group, one symbol style per
// group. Throws std::invalid_argument on an empty group list.
std::string render_rank_size_svg(std::span<const RankSizeGroup> groups,
                                 const std::string& title,
                                 const std::string& y_label);

enum class TableFormat { Markdown, Csv };

struct SummaryTableStats {
  std::array<DescriptiveStats, 6> wf;
  DescriptiveStats sum, mean, e1, area, e2;
};

SummaryTableStats summarize_columns(std::span<const EfficiencySummary> rows);

// One row per subject in input order, followed by Mean/SD/CV/Max footer
// rows. Body precision: WFs trimmed to at most 2 decimals, sums and areas
// 1 decimal, means and percentages 2 decimals; SD/CV rows 3 decimals.
std::string emit_table(std::span<const EfficiencySummary> rows,
                       const SummaryTableStats& stats, TableFormat format);

// Reduced table for subjects that carry efficiency values but no
// per-question weight factors.
struct EValueRow {
  std::string subject_id;
  double sum = 0.0;
  double mean = 0.0;
  double e1 = 0.0;
  double area = 0.0;
  double e2 = 0.0;
};

struct EValueTableStats {
  DescriptiveStats sum, mean, e1, area, e2;
};

EValueTableStats summarize_e_columns(std::span<const EValueRow> rows);

std::string emit_e_table(std::span<const EValueRow> rows,
                         const EValueTableStats& stats, TableFormat format);

}  // namespace peereff
