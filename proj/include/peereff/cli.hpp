#pragma once

// Batch pipeline behind the command-line tool. The cmd_* functions return
// process exit codes so they can be driven in-process by tests:
//   0 success, 1 validation failure, 2 I/O failure, 3 statistical-domain
//   failure.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "peereff/ingest.hpp"
#include "peereff/report.hpp"

namespace peereff {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitStats = 3;

enum class MeasureSelection { E1, E2, Both };

struct RunConfig {
  std::vector<std::string> fixtures;  // bundled dataset names
  std::optional<std::filesystem::path> responses_path;
  std::optional<std::filesystem::path> journals_path;
  std::optional<std::filesystem::path> prescored_path;
  std::filesystem::path out_dir = ".";
  MeasureSelection measure = MeasureSelection::Both;
  // "index" groups journals by citation-index membership; "journal:<id>"
  // additionally carves that journal's own editors into a group.
  std::string group_by = "index";
  bool charts = false;
  TableFormat format = TableFormat::Markdown;
};

// Parses all inputs and prints every parse/validation issue; exit 0 iff
// clean (warnings allowed).
int cmd_validate(const RunConfig& config, std::ostream& out,
                 std::ostream& err);

// Writes per-editor and per-journal efficiency tables plus optional radar
// charts.
int cmd_score(const RunConfig& config, std::ostream& out, std::ostream& err);

// Writes descriptive statistics, correlation matrices, rank-coherence,
// pairwise group tests and rank-size fits (with figures).
int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);

// Dataset-level structural validation (journal references, duplicate ids,
// per-response checks).
std::vector<ValidationIssue> validate_dataset(const Dataset& dataset,
                                              const QuestionnaireSchema& schema);

}  // namespace peereff
