#pragma once

// Loading, validation and normalization of survey data and pre-scored
// weight-factor tables, plus the bundled fixture datasets.
//
// Interchange formats (all comma-separated, UTF-8, header row, '.' decimal
// point):
//   responses.csv  editor_id,journal_id,role,years,q1..q6,strategies
//                  - q cells: option index 1..4, "<value>%" (raw percentage)
//                    or "raw:<value>" (raw numeric, converted at load time)
//                  - strategies: ';'-separated codes, OTHER may carry
//                    "OTHER:free text"
//   journals.csv   journal_id,name,issn,index_group
//   prescored.csv  journal_id,wf1..wf6[,exp_sum,exp_mean,exp_e1,exp_area,
//                  exp_e2]
// The JSON response format mirrors the CSV field names 1:1.

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "peereff/survey.hpp"

namespace peereff {

enum class ResponseFormat { Csv, Json };

struct ParseIssue {
  std::size_t record = 0;  // 1-based data record (header excluded)
  std::string field;
  std::string message;
  bool warning = false;  // warnings do not invalidate the parse

  bool operator==(const ParseIssue&) const = default;
};

struct ParsedResponses {
  std::vector<EditorResponse> responses;
  std::vector<ParseIssue> issues;
};

// Parses an editor-response stream. Every record either yields a response or
// contributes at least one positional issue; parsing itself never throws on
// malformed data. Raw numeric answers are bucketed to option indices here.
ParsedResponses parse_responses(
    std::istream& in, ResponseFormat format,
    const QuestionnaireSchema& schema = QuestionnaireSchema::standard());

std::string write_responses_csv(std::span<const EditorResponse> responses);
std::string write_responses_json(std::span<const EditorResponse> responses);

struct ParsedJournals {
  std::vector<JournalRecord> journals;
  std::vector<ParseIssue> issues;
};

ParsedJournals parse_journals(std::istream& in);
std::string write_journals_csv(std::span<const JournalRecord> journals);

// Reference columns carried alongside pre-scored rows; used as regression
// targets and as the analysis series for curated datasets.
struct ExpectedColumns {
  std::optional<double> sum;
  std::optional<double> mean;
  std::optional<double> e1;
  std::optional<double> area;
  std::optional<double> e2;

  bool operator==(const ExpectedColumns&) const = default;
  bool complete_e() const { return e1.has_value() && e2.has_value(); }
  bool complete_all() const {
    return sum && mean && e1 && area && e2;
  }
};

// A subject that is already scored: either a full WF vector (re-scorable)
// or reference efficiency values only.
struct PrescoredEntry {
  std::string subject_id;
  std::optional<WfVector> wf;
  ExpectedColumns expected;

  bool operator==(const PrescoredEntry&) const = default;
};

struct ParsedPrescored {
  std::vector<PrescoredEntry> entries;
  std::vector<ParseIssue> issues;
};

ParsedPrescored parse_prescored_table(std::istream& in);
std::string write_prescored_csv(std::span<const PrescoredEntry> entries);

struct Dataset {
  std::vector<JournalRecord> journals;
  std::vector<EditorResponse> responses;
  std::vector<PrescoredEntry> prescored;
  std::string provenance;

  bool operator==(const Dataset&) const = default;
};

// Bundled datasets:
//   "wos"  - 11 journals with per-question WF vectors and reference columns
//   "sci"  - 13 journals, reference efficiency values only
//   "jscs" - 14 subeditors of one journal, reference efficiency values only
std::map<std::string, Dataset> load_fixtures();

}  // namespace peereff
