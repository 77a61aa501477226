// Acceptance suite: one check function per release criterion, each printing
// a single PASS/FAIL line (details indented below it). Run everything or a
// single criterion with --criterion N. Exit code = number of failures.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "peereff/cli.hpp"
#include "peereff/ingest.hpp"
#include "peereff/report.hpp"
#include "peereff/scoring.hpp"
#include "peereff/stats.hpp"

using namespace peereff;
namespace fs = std::filesystem;

namespace {

struct CriterionResult {
  bool pass = true;
  std::vector<std::string> details;
};

std::string num(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

void check(CriterionResult& result, bool ok, const std::string& label) {
  result.details.push_back(std::string(ok ? "ok   " : "FAIL ") + label);
  if (!ok) result.pass = false;
}

bool near(double value, double target, double tolerance) {
  return std::abs(value - target) <= tolerance;
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

// Column accessors over a bundled dataset's reference values.
std::vector<double> expected_column(
    const Dataset& dataset, std::optional<double> ExpectedColumns::*member) {
  std::vector<double> column;
  for (const PrescoredEntry& entry : dataset.prescored) {
    column.push_back((entry.expected.*member).value());
  }
  return column;
}

std::vector<double> wf_column(const Dataset& dataset, std::size_t q) {
  std::vector<double> column;
  for (const PrescoredEntry& entry : dataset.prescored) {
    column.push_back((*entry.wf)[q]);
  }
  return column;
}

// ---------------------------------------------------------------------------

CriterionResult criterion_1_hexagon_ceiling() {
  CriterionResult r;
  const double area = hexagon_area(WfVector({4, 4, 4, 4, 4, 4}));
  check(r, near(area, 41.569, 0.001),
        "all-4 hexagon area = " + num(area, "%.6f") + " (target 41.569 "
        "+- 0.001)");
  check(r, round_to(area, 2) == 41.57,
        "2-decimal rounding = " + num(round_to(area, 2), "%.2f") +
            " (target 41.57)");
  return r;
}

CriterionResult criterion_2_reference_reconstruction() {
  CriterionResult r;
  const Dataset wos = load_fixtures().at("wos");
  for (const PrescoredEntry& entry : wos.prescored) {
    const EfficiencySummary computed =
        efficiency_summary(entry.subject_id, *entry.wf);
    const bool sum_ok =
        round_to(computed.sum_wf, 1) == *entry.expected.sum;
    const bool mean_ok =
        round_to(computed.mean_wf, 2) == *entry.expected.mean;
    const bool e1_ok = near(computed.e1_percent, *entry.expected.e1, 0.15);
    const bool area_ok =
        near(computed.hexagon_area_au, *entry.expected.area, 0.1);
    const bool e2_ok = near(computed.e2_percent, *entry.expected.e2, 0.25);
    check(r, sum_ok && mean_ok && e1_ok && area_ok && e2_ok,
          "row " + entry.subject_id + ": sum " +
              num(computed.sum_wf, "%.1f") + "/" +
              num(*entry.expected.sum, "%.1f") + ", mean " +
              num(computed.mean_wf, "%.2f") + "/" +
              num(*entry.expected.mean, "%.2f") + ", e1 " +
              num(computed.e1_percent, "%.3f") + "/" +
              num(*entry.expected.e1, "%.2f") + ", area " +
              num(computed.hexagon_area_au, "%.3f") + "/" +
              num(*entry.expected.area, "%.1f") + ", e2 " +
              num(computed.e2_percent, "%.3f") + "/" +
              num(*entry.expected.e2, "%.2f"));
  }
  return r;
}

CriterionResult criterion_3_footer_statistics() {
  CriterionResult r;
  const Dataset wos = load_fixtures().at("wos");
  const DescriptiveStats mean_col =
      descriptive_stats(expected_column(wos, &ExpectedColumns::mean));
  check(r, near(mean_col.mean, 3.135, 0.001),
        "average-WF column mean = " + num(mean_col.mean, "%.5f") +
            " (target 3.135 +- 0.001)");
  check(r, near(*mean_col.sd, 0.4710, 0.0005),
        "average-WF column SD = " + num(*mean_col.sd, "%.5f") +
            " (target 0.4710 +- 0.0005)");
  check(r, near(*mean_col.cv, 0.150, 0.001),
        "average-WF column CV = " + num(*mean_col.cv, "%.5f") +
            " (target 0.150 +- 0.001)");

  const DescriptiveStats e2_col =
      descriptive_stats(expected_column(wos, &ExpectedColumns::e2));
  check(r, near(e2_col.mean, 63.00, 0.05),
        "E2 column mean = " + num(e2_col.mean, "%.4f") +
            " (target 63.00 +- 0.05)");
  check(r, near(*e2_col.sd, 17.466, 0.01),
        "E2 column SD = " + num(*e2_col.sd, "%.4f") +
            " (target 17.466 +- 0.01)");
  return r;
}

CriterionResult criterion_4_rank_coherence() {
  CriterionResult r;
  const auto fixtures = load_fixtures();
  const struct {
    const char* name;
    double target;
  } cases[] = {{"wos", 0.972}, {"sci", 0.973}, {"jscs", 0.949}};
  for (const auto& c : cases) {
    const Dataset& dataset = fixtures.at(c.name);
    const RankCoherence rc =
        kendall_tau_b(expected_column(dataset, &ExpectedColumns::e1),
                      expected_column(dataset, &ExpectedColumns::e2));
    check(r, near(rc.tau_b, c.target, 0.001),
          std::string(c.name) + ": tau-b = " + num(rc.tau_b, "%.5f") +
              " (target " + num(c.target, "%.3f") + " +- 0.001)");
  }
  return r;
}

CriterionResult criterion_5_correlation_suite() {
  CriterionResult r;
  const Dataset wos = load_fixtures().at("wos");
  const std::vector<double> q1 = wf_column(wos, 0);
  const std::vector<double> q2 = wf_column(wos, 1);
  const std::vector<double> q3 = wf_column(wos, 2);
  const std::vector<double> mean_col =
      expected_column(wos, &ExpectedColumns::mean);
  const std::vector<double> e1 = expected_column(wos, &ExpectedColumns::e1);
  const std::vector<double> e2 = expected_column(wos, &ExpectedColumns::e2);

  const struct {
    const char* label;
    CorrelationResult result;
    double target;
  } cases[] = {
      {"q1 vs q2", pearson(q1, q2), 0.93},
      {"q1 vs q3", pearson(q1, q3), 0.88},
      {"q1 vs average WF", pearson(q1, mean_col), 0.84},
      {"e1 vs e2", pearson(e1, e2), 0.98},
  };
  for (const auto& c : cases) {
    check(r, near(c.result.r, c.target, 0.01),
          std::string(c.label) + ": r = " + num(c.result.r, "%.5f") +
              " (target " + num(c.target, "%.2f") + " +- 0.01)");
  }
  for (const auto& c : cases) {
    check(r, c.result.strong,
          std::string(c.label) + " flagged strong (r >= 0.75)");
  }
  return r;
}

CriterionResult criterion_6_group_verdicts() {
  CriterionResult r;
  const auto fixtures = load_fixtures();
  for (const auto member :
       {&ExpectedColumns::e1, &ExpectedColumns::e2}) {
    const std::string measure =
        member == &ExpectedColumns::e1 ? "E1" : "E2";
    const std::vector<double> wos =
        expected_column(fixtures.at("wos"), member);
    const std::vector<double> sci =
        expected_column(fixtures.at("sci"), member);
    const std::vector<double> jscs =
        expected_column(fixtures.at("jscs"), member);

    const GroupTestResult sci_jscs = mann_whitney_u(sci, jscs);
    check(r, sci_jscs.significant,
          measure + " sci vs jscs: p = " + num(sci_jscs.p_two_sided, "%.5f") +
              " (expected significant at 0.05)");
    const GroupTestResult wos_sci = mann_whitney_u(wos, sci);
    check(r, !wos_sci.significant,
          measure + " wos vs sci: p = " + num(wos_sci.p_two_sided, "%.5f") +
              " (expected not significant)");
    const GroupTestResult wos_jscs = mann_whitney_u(wos, jscs);
    check(r, !wos_jscs.significant,
          measure + " wos vs jscs: p = " + num(wos_jscs.p_two_sided, "%.5f") +
              " (expected not significant)");
  }
  return r;
}

CriterionResult criterion_7_estimator_properties() {
  CriterionResult r;
  std::mt19937 rng(73);

  // Pearson invariance under positive affine rescaling of either argument.
  {
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    std::uniform_real_distribution<double> shift(-50.0, 50.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 3 + rng() % 20;
      std::vector<double> x(n), y(n), tx(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = value(rng);
      for (std::size_t i = 0; i < n; ++i) y[i] = value(rng);
      const double a = scale(rng), b = shift(rng);
      for (std::size_t i = 0; i < n; ++i) tx[i] = a * x[i] + b;
      try {
        worst = std::max(
            worst, std::abs(pearson(tx, y).r - pearson(x, y).r));
      } catch (const std::domain_error&) {
        --trial;
      }
    }
    check(r, worst < 1e-12,
          "pearson affine invariance, 100 random series: max drift = " +
              num(worst, "%.2e"));
  }

  // Kendall tau-b against the O(n^2) definition oracle.
  {
    std::uniform_int_distribution<int> tied_value(0, 5);
    std::uniform_real_distribution<double> real_value(-10.0, 10.0);
    double worst = 0.0;
    int checked = 0;
    while (checked < 500) {
      const std::size_t n = 2 + rng() % 29;
      const bool ties = (rng() % 2) == 0;
      std::vector<double> x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = ties ? tied_value(rng) : real_value(rng);
        y[i] = ties ? tied_value(rng) : real_value(rng);
      }
      try {
        const double fast = kendall_tau_b(x, y).tau_b;
        const double slow = oracles::kendall_by_enumeration(x, y).tau_b;
        worst = std::max(worst, std::abs(fast - slow));
        ++checked;
      } catch (const std::domain_error&) {
        // all-tied draws are regenerated
      }
    }
    check(r, worst < 1e-12,
          "tau-b vs pair-enumeration oracle, 500 random inputs: max "
          "deviation = " +
              num(worst, "%.2e"));
  }

  // Mann-Whitney normal approximation vs exact enumeration, exhaustively
  // over all tie-free configurations with n1, n2 <= 6.
  {
    double worst = 0.0;
    std::string worst_at;
    for (std::size_t n1 = 1; n1 <= 6; ++n1) {
      for (std::size_t n2 = n1; n2 <= 6; ++n2) {
        std::vector<double> pooled(n1 + n2);
        for (std::size_t i = 0; i < pooled.size(); ++i) {
          pooled[i] = static_cast<double>(i + 1);
        }
        std::vector<bool> selector(pooled.size(), false);
        std::fill(selector.begin(), selector.begin() + n1, true);
        std::sort(selector.begin(), selector.end());
        do {
          std::vector<double> a, b;
          for (std::size_t i = 0; i < pooled.size(); ++i) {
            (selector[i] ? a : b).push_back(pooled[i]);
          }
          const double approx = mann_whitney_u(a, b).p_two_sided;
          const double exact = oracles::mann_whitney_exact_p(a, b);
          if (std::abs(approx - exact) > worst) {
            worst = std::abs(approx - exact);
            worst_at = "n1=" + std::to_string(a.size()) +
                       " n2=" + std::to_string(b.size()) +
                       " U=" + num(mann_whitney_u(a, b).u_statistic, "%.1f");
          }
        } while (std::next_permutation(selector.begin(), selector.end()));
      }
    }
    check(r, worst <= 0.02,
          "mann-whitney approximation vs exact enumeration, all tie-free "
          "n1,n2 <= 6: max |dp| = " +
              num(worst, "%.4f") + " at " + worst_at + " (target <= 0.02)");
  }
  return r;
}

CriterionResult criterion_8_scoring_properties() {
  CriterionResult r;
  std::mt19937 rng(74);
  std::uniform_real_distribution<double> wf_value(1.0, 4.0);
  auto random_wf = [&] {
    std::array<double, 6> v{};
    for (double& x : v) x = wf_value(rng);
    return WfVector(v);
  };

  // E1 permutation invariance over full permutation orbits.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const WfVector v = random_wf();
      std::array<double, 6> p = v.values();
      std::sort(p.begin(), p.end());
      do {
        worst = std::max(
            worst, std::abs(e1_percent(WfVector(p)) - e1_percent(v)));
      } while (std::next_permutation(p.begin(), p.end()));
    }
    check(r, worst < 1e-9,
          "E1 invariant over full permutation orbits: max drift = " +
              num(worst, "%.2e"));
  }

  // E2 order dependence on the documented pair.
  {
    const double alternating = hexagon_area(WfVector({4, 1, 4, 1, 4, 1}));
    const double grouped = hexagon_area(WfVector({4, 4, 4, 1, 1, 1}));
    check(r, std::abs(grouped - alternating) > 7.0,
          "same multiset, different order: |" + num(grouped, "%.3f") +
              " - " + num(alternating, "%.3f") + "| > 7 AU");
  }

  // Strict monotonicity under a single-component increase.
  {
    std::uniform_int_distribution<std::size_t> pick(0, 5);
    std::uniform_real_distribution<double> bump(0.01, 0.5);
    bool monotone = true;
    int tested = 0;
    while (tested < 500) {
      const WfVector v = random_wf();
      std::array<double, 6> up = v.values();
      const std::size_t i = pick(rng);
      const double delta = bump(rng);
      if (up[i] + delta > 4.0) continue;
      up[i] += delta;
      const WfVector w(up);
      monotone = monotone && w.sum() > v.sum() && w.mean() > v.mean() &&
                 e1_percent(w) > e1_percent(v) &&
                 hexagon_area(w) > hexagon_area(v) &&
                 e2_percent(w) > e2_percent(v);
      ++tested;
    }
    check(r, monotone,
          "sum, mean, E1, area and E2 all strictly increase on 500 random "
          "single-component bumps");
  }

  // Shoelace oracle agreement.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const WfVector v = random_wf();
      const double direct = hexagon_area(v);
      const double reference = oracles::shoelace_hexagon_area(v.values());
      worst = std::max(worst, std::abs(direct - reference) / reference);
    }
    check(r, worst < 1e-9,
          "hexagon area vs shoelace oracle, 1000 random vectors: max "
          "relative deviation = " +
              num(worst, "%.2e"));
  }
  return r;
}

CriterionResult criterion_9_rank_size() {
  CriterionResult r;

  {
    std::vector<double> line;
    for (int rank = 1; rank <= 5; ++rank) line.push_back(10.0 - rank);
    const RankSizeFit fit = rank_size_fit(line, FitModel::Linear);
    check(r,
          near(fit.a, 10.0, 1e-9) && near(fit.b, -1.0, 1e-9) &&
              near(fit.r_squared, 1.0, 1e-12),
          "noiseless line: intercept " + num(fit.a, "%.9f") + ", slope " +
              num(fit.b, "%.9f") + ", R^2 " + num(fit.r_squared, "%.12f"));
  }
  {
    std::vector<double> curve;
    for (int rank = 1; rank <= 6; ++rank) {
      curve.push_back(8.0 * std::pow(static_cast<double>(rank), -0.5));
    }
    const RankSizeFit fit = rank_size_fit(curve, FitModel::Power);
    check(r,
          near(fit.a, 8.0, 1e-9) && near(fit.b, -0.5, 1e-9) &&
              near(fit.r_squared, 1.0, 1e-12),
          "noiseless power law: amplitude " + num(fit.a, "%.9f") +
              ", exponent " + num(fit.b, "%.9f") + ", R^2 " +
              num(fit.r_squared, "%.12f"));
  }

  const auto fixtures = load_fixtures();
  std::size_t linear_wins = 0;
  for (const char* name : {"wos", "sci", "jscs"}) {
    const std::vector<double> e1 =
        expected_column(fixtures.at(name), &ExpectedColumns::e1);
    const RankSizeFit power = rank_size_fit(e1, FitModel::Power);
    const RankSizeFit linear = rank_size_fit(e1, FitModel::Linear);
    const bool linear_at_least = linear.r_squared >= power.r_squared;
    if (linear_at_least) ++linear_wins;
    r.details.push_back("info " + std::string(name) + " E1: linear R^2 = " +
                        num(linear.r_squared, "%.4f") + ", power R^2 = " +
                        num(power.r_squared, "%.4f"));
  }
  check(r, linear_wins >= 2,
        "linear R^2 >= power R^2 in " + std::to_string(linear_wins) +
            " of 3 groups (need >= 2)");
  return r;
}

CriterionResult criterion_10_determinism() {
  CriterionResult r;
  const fs::path base =
      fs::temp_directory_path() /
      ("peereff_acceptance_" + std::to_string(::getpid()));
  const fs::path run_a = base / "a";
  const fs::path run_b = base / "b";
  fs::remove_all(base);

  RunConfig config;
  config.fixtures = {"wos"};
  config.charts = true;

  std::ostringstream sink_out, sink_err;
  config.out_dir = run_a;
  const int code_a = cmd_score(config, sink_out, sink_err);
  config.out_dir = run_b;
  const int code_b = cmd_score(config, sink_out, sink_err);
  check(r, code_a == 0 && code_b == 0, "both scoring runs exit 0");

  std::map<std::string, std::string> files_a, files_b;
  auto slurp = [](const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      std::ifstream in(entry.path(), std::ios::binary);
      std::ostringstream content;
      content << in.rdbuf();
      files[entry.path().filename().string()] = content.str();
    }
    return files;
  };
  files_a = slurp(run_a);
  files_b = slurp(run_b);

  check(r, files_a.size() == 12,
        "run produced 12 artifacts (11 radar charts + 1 table), got " +
            std::to_string(files_a.size()));
  bool identical = files_a.size() == files_b.size();
  for (const auto& [name, content] : files_a) {
    const auto it = files_b.find(name);
    if (it == files_b.end() || it->second != content) {
      identical = false;
      r.details.push_back("FAIL artifact differs between runs: " + name);
    }
  }
  check(r, identical, "every artifact is byte-identical across runs");
  fs::remove_all(base);
  return r;
}

struct Criterion {
  int number;
  const char* title;
  std::function<CriterionResult()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "hexagon area ceiling", criterion_1_hexagon_ceiling},
      {2, "bundled WoS table reconstruction",
       criterion_2_reference_reconstruction},
      {3, "footer statistics on the bundled WoS table",
       criterion_3_footer_statistics},
      {4, "rank coherence between the two measures",
       criterion_4_rank_coherence},
      {5, "correlation suite on the bundled WoS table",
       criterion_5_correlation_suite},
      {6, "pairwise group verdicts", criterion_6_group_verdicts},
      {7, "statistical estimator properties",
       criterion_7_estimator_properties},
      {8, "scoring properties", criterion_8_scoring_properties},
      {9, "rank-size fits", criterion_9_rank_size},
      {10, "artifact determinism", criterion_10_determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected = std::atoi(argv[++i]);
    } else if (arg.rfind("--criterion=", 0) == 0) {
      selected = std::atoi(arg.c_str() + 12);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 64;
    }
  }

  int failures = 0;
  for (const Criterion& criterion : criteria()) {
    if (selected != 0 && criterion.number != selected) continue;
    const CriterionResult result = criterion.run();
    std::cout << "criterion " << criterion.number << ": "
              << (result.pass ? "PASS" : "FAIL") << " - " << criterion.title
              << "\n";
    for (const std::string& detail : result.details) {
      std::cout << "    " << detail << "\n";
    }
    if (!result.pass) ++failures;
  }
  return failures;
}
