#include "peereff/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "peereff/csv.hpp"

namespace peereff {

namespace {

constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(const char* spec, double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string coord(double v) { return fmt("%.6f", v); }

// WFs print like the source tables: integral values bare, otherwise up to
// two decimals with trailing zeros trimmed.
std::string fmt_wf(double v) {
  std::string s = fmt("%.2f", v);
  while (s.ends_with('0')) s.pop_back();
  if (s.ends_with('.')) s.pop_back();
  return s;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

const char* subject_color(const RadarSubject& subject, std::size_t position) {
  if (!subject.style.empty()) return subject.style.c_str();
  return kPalette[position % kPalette.size()];
}

// Axis i points at 90 - 60*i degrees (up, then clockwise).
struct AxisDirections {
  std::array<double, 6> cos, sin;
};

AxisDirections axis_directions() {
  AxisDirections d;
  for (std::size_t i = 0; i < 6; ++i) {
    const double angle = (90.0 - 60.0 * static_cast<double>(i)) *
                         std::numbers::pi / 180.0;
    d.cos[i] = std::cos(angle);
    d.sin[i] = std::sin(angle);
  }
  return d;
}

}  // namespace

const std::array<std::string, 6>& default_axis_labels() {
  static const std::array<std::string, 6> labels = {
      "Reviewers invited",  "Second-round need", "No-response rate",
      "Inadequate reports", "Report quality",    "Timeliness"};
  return labels;
}

std::string render_radar_svg(const ChartSpec& spec) {
  if (spec.scale_max != 4.0) {
    throw std::invalid_argument("radar scale is fixed at 4");
  }
  if (spec.width_px <= 0 || spec.height_px <= 0) {
    throw std::invalid_argument("chart size must be positive");
  }

  const double cx = spec.width_px / 2.0;
  const double cy = spec.height_px / 2.0;
  const double radius =
      std::min(spec.width_px, spec.height_px) / 2.0 - 70.0;
  if (radius <= 0.0) {
    throw std::invalid_argument("chart too small for the radar layout");
  }
  const AxisDirections dirs = axis_directions();
  auto point = [&](std::size_t axis, double r) {
    // Screen y grows downward.
    return coord(cx + r * dirs.cos[axis]) + "," +
           coord(cy - r * dirs.sin[axis]);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(spec.width_px) + "\" height=\"" +
         std::to_string(spec.height_px) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width_px) + " " + std::to_string(spec.height_px) +
         "\">\n";
  if (!spec.title.empty()) {
    svg += "  <title>" + xml_escape(spec.title) + "</title>\n";
    svg += "  <text x=\"" + coord(cx) +
           "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" +
           xml_escape(spec.title) + "</text>\n";
  }

  svg += "  <g class=\"grid\" fill=\"none\" stroke=\"#cccccc\" "
         "stroke-width=\"1\">\n";
  for (int level = 1; level <= 4; ++level) {
    const double r = radius * static_cast<double>(level) / 4.0;
    svg += "    <polygon points=\"";
    for (std::size_t axis = 0; axis < 6; ++axis) {
      if (axis > 0) svg += " ";
      svg += point(axis, r);
    }
    svg += "\"/>\n";
  }
  for (std::size_t axis = 0; axis < 6; ++axis) {
    svg += "    <line x1=\"" + coord(cx) + "\" y1=\"" + coord(cy) +
           "\" x2=\"" + coord(cx + radius * dirs.cos[axis]) + "\" y2=\"" +
           coord(cy - radius * dirs.sin[axis]) + "\"/>\n";
  }
  svg += "  </g>\n";

  svg += "  <g class=\"axis-labels\" font-family=\"sans-serif\" "
         "font-size=\"11\" fill=\"#333333\">\n";
  for (std::size_t axis = 0; axis < 6; ++axis) {
    const double lx = cx + (radius + 14.0) * dirs.cos[axis];
    const double ly = cy - (radius + 14.0) * dirs.sin[axis];
    const char* anchor = dirs.cos[axis] > 0.25
                             ? "start"
                             : (dirs.cos[axis] < -0.25 ? "end" : "middle");
    svg += "    <text x=\"" + coord(lx) + "\" y=\"" + coord(ly) +
           "\" text-anchor=\"" + anchor + "\">" +
           xml_escape(spec.axis_labels[axis]) + "</text>\n";
  }
  svg += "  </g>\n";

  for (std::size_t s = 0; s < spec.subjects.size(); ++s) {
    const RadarSubject& subject = spec.subjects[s];
    const char* color = subject_color(subject, s);
    svg += "  <polygon class=\"subject\" data-label=\"" +
           xml_escape(subject.label) + "\" points=\"";
    for (std::size_t axis = 0; axis < 6; ++axis) {
      if (axis > 0) svg += " ";
      svg += point(axis, radius * subject.wf[axis] / spec.scale_max);
    }
    svg += std::string("\" fill=\"") + color + "\" fill-opacity=\"0.25\" " +
           "stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
  }

  if (spec.subjects.size() > 1) {
    svg += "  <g class=\"legend\" font-family=\"sans-serif\" "
           "font-size=\"11\">\n";
    for (std::size_t s = 0; s < spec.subjects.size(); ++s) {
      const double y = 34.0 + 16.0 * static_cast<double>(s);
      svg += std::string("    <rect x=\"10\" y=\"") + coord(y - 9.0) +
             "\" width=\"10\" height=\"10\" fill=\"" +
             subject_color(spec.subjects[s], s) + "\"/>\n";
      svg += "    <text x=\"24\" y=\"" + coord(y) + "\">" +
             xml_escape(spec.subjects[s].label) + "</text>\n";
    }
    svg += "  </g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_rank_size_svg(std::span<const RankSizeGroup> groups,
                                 const std::string& title,
                                 const std::string& y_label) {
  if (groups.empty()) {
    throw std::invalid_argument("rank-size figure needs at least one group");
  }

  const int width = 640, height = 420;
  const double left = 64.0, right = 620.0, top = 48.0, bottom = 370.0;

  std::size_t max_rank = 0;
  double max_value = 0.0;
  for (const RankSizeGroup& g : groups) {
    max_rank = std::max(max_rank, g.linear.ranked_values.size());
    for (double v : g.linear.ranked_values) max_value = std::max(max_value, v);
  }
  if (max_rank == 0 || max_value <= 0.0) {
    throw std::invalid_argument("rank-size figure needs non-empty data");
  }
  const double x_min = 0.5;
  const double x_max = static_cast<double>(max_rank) + 0.5;
  const double y_max = max_value * 1.08;

  auto sx = [&](double rank) {
    return left + (rank - x_min) / (x_max - x_min) * (right - left);
  };
  auto sy = [&](double value) {
    return bottom - std::clamp(value, 0.0, y_max) / y_max * (bottom - top);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";
  svg += "  <title>" + xml_escape(title) + "</title>\n";
  svg += "  <text x=\"" + coord((left + right) / 2.0) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" +
         xml_escape(title) + "</text>\n";

  // Axes and ticks.
  svg += "  <g class=\"axes\" stroke=\"#333333\" stroke-width=\"1\">\n";
  svg += "    <line x1=\"" + coord(left) + "\" y1=\"" + coord(bottom) +
         "\" x2=\"" + coord(right) + "\" y2=\"" + coord(bottom) + "\"/>\n";
  svg += "    <line x1=\"" + coord(left) + "\" y1=\"" + coord(top) +
         "\" x2=\"" + coord(left) + "\" y2=\"" + coord(bottom) + "\"/>\n";
  svg += "  </g>\n";
  svg += "  <g class=\"ticks\" font-family=\"sans-serif\" font-size=\"10\" "
         "fill=\"#333333\" text-anchor=\"middle\">\n";
  for (std::size_t rank = 1; rank <= max_rank; ++rank) {
    const double x = sx(static_cast<double>(rank));
    svg += "    <line x1=\"" + coord(x) + "\" y1=\"" + coord(bottom) +
           "\" x2=\"" + coord(x) + "\" y2=\"" + coord(bottom + 4.0) +
           "\" stroke=\"#333333\"/>\n";
    svg += "    <text x=\"" + coord(x) + "\" y=\"" + coord(bottom + 16.0) +
           "\">" + std::to_string(rank) + "</text>\n";
  }
  for (int tick = 0; tick <= 5; ++tick) {
    const double value = y_max * static_cast<double>(tick) / 5.0;
    const double y = sy(value);
    svg += "    <line x1=\"" + coord(left - 4.0) + "\" y1=\"" + coord(y) +
           "\" x2=\"" + coord(left) + "\" y2=\"" + coord(y) +
           "\" stroke=\"#333333\"/>\n";
    svg += "    <text x=\"" + coord(left - 8.0) + "\" y=\"" + coord(y + 3.0) +
           "\" text-anchor=\"end\">" + fmt("%.4g", value) + "</text>\n";
  }
  svg += "    <text x=\"" + coord((left + right) / 2.0) + "\" y=\"" +
         coord(bottom + 34.0) + "\">Rank</text>\n";
  svg += "    <text x=\"16\" y=\"" + coord((top + bottom) / 2.0) +
         "\" transform=\"rotate(-90 16 " + coord((top + bottom) / 2.0) +
         ")\">" + xml_escape(y_label) + "</text>\n";
  svg += "  </g>\n";

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const RankSizeGroup& group = groups[g];
    const char* color = kPalette[g % kPalette.size()];
    const std::size_t n = group.linear.ranked_values.size();

    // Linear fit: straight segment across the rank range.
    {
      const double y1 = group.linear.a + group.linear.b * 1.0;
      const double y2 =
          group.linear.a + group.linear.b * static_cast<double>(n);
      svg += std::string("  <line class=\"fit-linear\" x1=\"") +
             coord(sx(1.0)) + "\" y1=\"" + coord(sy(y1)) + "\" x2=\"" +
             coord(sx(static_cast<double>(n))) + "\" y2=\"" + coord(sy(y2)) +
             "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
    }
    // Power fit: sampled polyline.
    {
      svg += std::string("  <polyline class=\"fit-power\" fill=\"none\" ") +
             "stroke=\"" + color +
             "\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\" points=\"";
      const int samples = 64;
      for (int s = 0; s <= samples; ++s) {
        const double rank =
            1.0 + (static_cast<double>(n) - 1.0) * static_cast<double>(s) /
                      static_cast<double>(samples);
        const double value =
            group.power.a * std::pow(rank, group.power.b);
        if (s > 0) svg += " ";
        svg += coord(sx(rank)) + "," + coord(sy(value));
      }
      svg += "\"/>\n";
    }
    // Scatter: one marker per ranked value.
    svg += "  <g class=\"points\" fill=\"" + std::string(color) + "\">\n";
    for (std::size_t i = 0; i < n; ++i) {
      const double x = sx(static_cast<double>(i + 1));
      const double y = sy(group.linear.ranked_values[i]);
      const double r = 4.0;
      switch (g % 3) {
        case 0:  // triangle on base
          svg += "    <polygon points=\"" + coord(x) + "," + coord(y - r) +
                 " " + coord(x - r) + "," + coord(y + r) + " " +
                 coord(x + r) + "," + coord(y + r) + "\"/>\n";
          break;
        case 1:  // triangle on tip
          svg += "    <polygon points=\"" + coord(x) + "," + coord(y + r) +
                 " " + coord(x - r) + "," + coord(y - r) + " " +
                 coord(x + r) + "," + coord(y - r) + "\"/>\n";
          break;
        default:  // diamond
          svg += "    <polygon points=\"" + coord(x) + "," + coord(y - r) +
                 " " + coord(x + r) + "," + coord(y) + " " + coord(x) + "," +
                 coord(y + r) + " " + coord(x - r) + "," + coord(y) +
                 "\"/>\n";
      }
    }
    svg += "  </g>\n";
    // Legend entry.
    const double ly = 40.0 + 16.0 * static_cast<double>(g);
    svg += std::string("  <rect x=\"") + coord(right - 150.0) + "\" y=\"" +
           coord(ly - 9.0) + "\" width=\"10\" height=\"10\" fill=\"" + color +
           "\"/>\n";
    svg += "  <text x=\"" + coord(right - 136.0) + "\" y=\"" + coord(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" +
           xml_escape(group.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

namespace {

using Cells = std::vector<std::string>;

std::string opt_stat(const std::optional<double>& v) {
  return v ? fmt("%.3f", *v) : std::string();
}

std::string render_cell_rows(const std::vector<Cells>& rows,
                             TableFormat format) {
  std::string out;
  if (format == TableFormat::Csv) {
    for (const Cells& row : rows) out += csv::join(row) + "\n";
    return out;
  }
  // Markdown pipe table; the second row is the header separator.
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out += "|";
    for (const std::string& cell : rows[r]) out += " " + cell + " |";
    out += "\n";
    if (r == 0) {
      out += "|";
      for (std::size_t c = 0; c < rows[0].size(); ++c) out += " --- |";
      out += "\n";
    }
  }
  return out;
}

}  // namespace

SummaryTableStats summarize_columns(std::span<const EfficiencySummary> rows) {
  if (rows.empty()) {
    throw std::invalid_argument("summarize_columns: empty table");
  }
  SummaryTableStats stats;
  std::vector<double> column(rows.size());
  for (std::size_t q = 0; q < 6; ++q) {
    for (std::size_t r = 0; r < rows.size(); ++r) column[r] = rows[r].wf[q];
    stats.wf[q] = descriptive_stats(column);
  }
  auto col = [&](auto member) {
    for (std::size_t r = 0; r < rows.size(); ++r) column[r] = rows[r].*member;
    return descriptive_stats(column);
  };
  stats.sum = col(&EfficiencySummary::sum_wf);
  stats.mean = col(&EfficiencySummary::mean_wf);
  stats.e1 = col(&EfficiencySummary::e1_percent);
  stats.area = col(&EfficiencySummary::hexagon_area_au);
  stats.e2 = col(&EfficiencySummary::e2_percent);
  return stats;
}

std::string emit_table(std::span<const EfficiencySummary> rows,
                       const SummaryTableStats& stats, TableFormat format) {
  if (rows.empty()) {
    throw std::invalid_argument("emit_table: empty table");
  }
  std::vector<Cells> cells;
  if (format == TableFormat::Csv) {
    cells.push_back({"subject", "wf1", "wf2", "wf3", "wf4", "wf5", "wf6",
                     "sum", "mean_wf", "e1_percent", "area_au", "e2_percent"});
  } else {
    Cells header = {"Subject"};
    for (const std::string& label : default_axis_labels()) {
      header.push_back(label);
    }
    header.insert(header.end(), {"Sum", "Mean WF", "E1 / %",
                                 "Hexagon area / AU", "E2 / %"});
    cells.push_back(std::move(header));
  }
  for (const EfficiencySummary& row : rows) {
    Cells line = {row.subject_id};
    for (std::size_t i = 0; i < 6; ++i) line.push_back(fmt_wf(row.wf[i]));
    line.push_back(fmt("%.1f", row.sum_wf));
    line.push_back(fmt("%.2f", row.mean_wf));
    line.push_back(fmt("%.2f", row.e1_percent));
    line.push_back(fmt("%.1f", row.hexagon_area_au));
    line.push_back(fmt("%.2f", row.e2_percent));
    cells.push_back(std::move(line));
  }

  Cells mean_row = {"Mean"}, sd_row = {"SD"}, cv_row = {"CV"},
        max_row = {"Max"};
  for (std::size_t q = 0; q < 6; ++q) {
    mean_row.push_back(fmt("%.2f", stats.wf[q].mean));
    sd_row.push_back(opt_stat(stats.wf[q].sd));
    cv_row.push_back(opt_stat(stats.wf[q].cv));
    max_row.push_back(fmt_wf(stats.wf[q].max));
  }
  auto push_stat = [&](const DescriptiveStats& s, const char* mean_spec,
                       const char* max_spec) {
    mean_row.push_back(fmt(mean_spec, s.mean));
    sd_row.push_back(opt_stat(s.sd));
    cv_row.push_back(opt_stat(s.cv));
    max_row.push_back(fmt(max_spec, s.max));
  };
  push_stat(stats.sum, "%.2f", "%.1f");
  push_stat(stats.mean, "%.3f", "%.2f");
  push_stat(stats.e1, "%.2f", "%.2f");
  push_stat(stats.area, "%.2f", "%.1f");
  push_stat(stats.e2, "%.2f", "%.2f");
  cells.push_back(std::move(mean_row));
  cells.push_back(std::move(sd_row));
  cells.push_back(std::move(cv_row));
  cells.push_back(std::move(max_row));
  return render_cell_rows(cells, format);
}

EValueTableStats summarize_e_columns(std::span<const EValueRow> rows) {
  if (rows.empty()) {
    throw std::invalid_argument("summarize_e_columns: empty table");
  }
  EValueTableStats stats;
  std::vector<double> column(rows.size());
  auto col = [&](auto member) {
    for (std::size_t r = 0; r < rows.size(); ++r) column[r] = rows[r].*member;
    return descriptive_stats(column);
  };
  stats.sum = col(&EValueRow::sum);
  stats.mean = col(&EValueRow::mean);
  stats.e1 = col(&EValueRow::e1);
  stats.area = col(&EValueRow::area);
  stats.e2 = col(&EValueRow::e2);
  return stats;
}

std::string emit_e_table(std::span<const EValueRow> rows,
                         const EValueTableStats& stats, TableFormat format) {
  if (rows.empty()) {
    throw std::invalid_argument("emit_e_table: empty table");
  }
  std::vector<Cells> cells;
  if (format == TableFormat::Csv) {
    cells.push_back(
        {"subject", "sum", "mean_wf", "e1_percent", "area_au", "e2_percent"});
  } else {
    cells.push_back(
        {"Subject", "Sum", "Mean WF", "E1 / %", "Hexagon area / AU",
         "E2 / %"});
  }
  for (const EValueRow& row : rows) {
    cells.push_back({row.subject_id, fmt("%.1f", row.sum),
                     fmt("%.2f", row.mean), fmt("%.2f", row.e1),
                     fmt("%.1f", row.area), fmt("%.2f", row.e2)});
  }
  Cells mean_row = {"Mean"}, sd_row = {"SD"}, cv_row = {"CV"},
        max_row = {"Max"};
  auto push_stat = [&](const DescriptiveStats& s, const char* mean_spec,
                       const char* max_spec) {
    mean_row.push_back(fmt(mean_spec, s.mean));
    sd_row.push_back(opt_stat(s.sd));
    cv_row.push_back(opt_stat(s.cv));
    max_row.push_back(fmt(max_spec, s.max));
  };
  push_stat(stats.sum, "%.2f", "%.1f");
  push_stat(stats.mean, "%.3f", "%.2f");
  push_stat(stats.e1, "%.2f", "%.2f");
  push_stat(stats.area, "%.2f", "%.1f");
  push_stat(stats.e2, "%.2f", "%.2f");
  cells.push_back(std::move(mean_row));
  cells.push_back(std::move(sd_row));
  cells.push_back(std::move(cv_row));
  cells.push_back(std::move(max_row));
  return render_cell_rows(cells, format);
}

}  // namespace peereff
