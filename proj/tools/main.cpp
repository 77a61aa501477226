// Command-line front end: validate / score / analyze over bundled fixtures
// or user-supplied survey files.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "peereff/cli.hpp"

namespace {

struct RawOptions {
  std::vector<std::string> fixtures;
  std::string responses, journals, prescored;
  std::string out_dir = ".";
  std::string measure = "both";
  std::string group_by = "index";
  bool charts = false;
  std::string format = "md";
};

void add_common_options(CLI::App* cmd, RawOptions& raw) {
  cmd->add_option("--fixture,--fixtures", raw.fixtures,
                  "Bundled dataset name(s): wos, sci, jscs (repeatable or "
                  "comma-separated)")
      ->delimiter(',');
  cmd->add_option("--responses", raw.responses,
                  "Editor responses file (.csv or .json)");
  cmd->add_option("--journals", raw.journals, "Journal catalogue file (.csv)");
  cmd->add_option("--prescored", raw.prescored,
                  "Pre-scored weight-factor table (.csv)");
  cmd->add_option("--out", raw.out_dir,
                  "Output directory (default: current directory)");
  cmd->add_option("--measure", raw.measure,
                  "Efficiency measure selection: e1 | e2 | both")
      ->check(CLI::IsMember({"e1", "e2", "both"}));
  cmd->add_option("--group-by", raw.group_by,
                  "Grouping: index (citation-index membership) or "
                  "journal:<id> (carve one journal's editors into a group)");
  cmd->add_flag("--charts", raw.charts, "Also render radar charts");
  cmd->add_option("--format", raw.format, "Table output format: md | csv")
      ->check(CLI::IsMember({"md", "csv"}));
}

peereff::RunConfig to_config(const RawOptions& raw) {
  peereff::RunConfig config;
  config.fixtures = raw.fixtures;
  if (!raw.responses.empty()) config.responses_path = raw.responses;
  if (!raw.journals.empty()) config.journals_path = raw.journals;
  if (!raw.prescored.empty()) config.prescored_path = raw.prescored;
  config.out_dir = raw.out_dir;
  if (raw.measure == "e1") config.measure = peereff::MeasureSelection::E1;
  else if (raw.measure == "e2") config.measure = peereff::MeasureSelection::E2;
  else config.measure = peereff::MeasureSelection::Both;
  config.group_by = raw.group_by;
  config.charts = raw.charts;
  config.format = raw.format == "csv" ? peereff::TableFormat::Csv
                                      : peereff::TableFormat::Markdown;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "peereff: peer-review management efficiency scoring and analysis"};
  app.require_subcommand(1);

  RawOptions validate_raw, score_raw, analyze_raw;
  CLI::App* validate =
      app.add_subcommand("validate", "Parse and validate inputs");
  add_common_options(validate, validate_raw);
  CLI::App* score = app.add_subcommand(
      "score", "Compute efficiency summaries and radar charts");
  add_common_options(score, score_raw);
  CLI::App* analyze = app.add_subcommand(
      "analyze",
      "Correlations, rank coherence, group tests and rank-size fits");
  add_common_options(analyze, analyze_raw);

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    return peereff::cmd_validate(to_config(validate_raw), std::cout,
                                 std::cerr);
  }
  if (score->parsed()) {
    return peereff::cmd_score(to_config(score_raw), std::cout, std::cerr);
  }
  return peereff::cmd_analyze(to_config(analyze_raw), std::cout, std::cerr);
}
