#include "peereff/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <sstream>

#include "json.hpp"
#include "peereff/csv.hpp"

namespace peereff {

namespace {

const std::vector<std::string> kResponseHeader = {
    "editor_id", "journal_id", "role", "years", "q1", "q2",
    "q3",        "q4",         "q5",   "q6",    "strategies"};
const std::vector<std::string> kJournalHeader = {"journal_id", "name", "issn",
                                                 "index_group"};
const std::vector<std::string> kPrescoredHeaderShort = {
    "journal_id", "wf1", "wf2", "wf3", "wf4", "wf5", "wf6"};
const std::vector<std::string> kPrescoredHeaderFull = {
    "journal_id", "wf1",      "wf2",     "wf3",    "wf4",
    "wf5",        "wf6",      "exp_sum", "exp_mean", "exp_e1",
    "exp_area",   "exp_e2"};

std::optional<long> parse_int(std::string_view text) {
  long value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::optional<double> parse_double(std::string_view text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Resolves one answer cell to a canonical option index. Cells carry either
// the option index itself, "<value>%" for raw percentages, or
// "raw:<value>" for any raw numeric answer.
std::optional<int> resolve_answer_cell(const std::string& cell,
                                       const ScoredQuestion& question,
                                       std::string& error) {
  if (cell.ends_with('%')) {
    const auto value = parse_double(std::string_view(cell).substr(
        0, cell.size() - 1));
    if (!value) {
      error = "not a percentage: \"" + cell + "\"";
      return std::nullopt;
    }
    if (question.kind != AnswerKind::Percentage) {
      error = "question " + std::to_string(question.index) +
              " does not take a percentage answer";
      return std::nullopt;
    }
    try {
      return bucket_numeric_answer(question, *value);
    } catch (const std::exception& e) {
      error = e.what();
      return std::nullopt;
    }
  }
  if (cell.starts_with("raw:")) {
    const auto value = parse_double(std::string_view(cell).substr(4));
    if (!value) {
      error = "not a number: \"" + cell + "\"";
      return std::nullopt;
    }
    if (question.kind == AnswerKind::Categorical) {
      error = "question " + std::to_string(question.index) +
              " accepts categorical answers only";
      return std::nullopt;
    }
    try {
      return bucket_numeric_answer(question, *value);
    } catch (const std::exception& e) {
      error = e.what();
      return std::nullopt;
    }
  }
  const auto index = parse_int(cell);
  if (!index) {
    error = "not an option index: \"" + cell + "\"";
    return std::nullopt;
  }
  if (*index < 1 || *index > 4) {
    error = "option index out of 1..4: " + cell;
    return std::nullopt;
  }
  return static_cast<int>(*index);
}

std::optional<std::vector<SearchStrategy>> parse_strategies(
    const std::string& cell, std::string& error) {
  std::vector<SearchStrategy> strategies;
  if (cell.empty()) return strategies;

  std::size_t pos = 0;
  while (pos <= cell.size()) {
    const std::size_t next = cell.find(';', pos);
    std::string token = cell.substr(
        pos, next == std::string::npos ? std::string::npos : next - pos);
    pos = next == std::string::npos ? cell.size() + 1 : next + 1;
    if (token.empty()) continue;

    std::string other_text;
    if (token.starts_with("OTHER:")) {
      other_text = token.substr(6);
      token = "OTHER";
    }
    const auto code = strategy_code_from_string(token);
    if (!code) {
      std::string valid;
      for (const std::string& c : all_strategy_codes()) {
        if (!valid.empty()) valid += ", ";
        valid += c;
      }
      error = "unknown strategy code \"" + token + "\" (valid: " + valid + ")";
      return std::nullopt;
    }
    strategies.push_back({*code, other_text});
  }
  std::sort(strategies.begin(), strategies.end());
  strategies.erase(std::unique(strategies.begin(), strategies.end()),
                   strategies.end());
  return strategies;
}

// Builds one response from named cells; shared by the CSV and JSON readers.
std::optional<EditorResponse> build_response(
    const std::vector<std::string>& cells, std::size_t record,
    const QuestionnaireSchema& schema, std::vector<ParseIssue>& issues) {
  const std::size_t before = issues.size();
  EditorResponse response;
  response.editor_id = cells[0];
  response.journal_id = cells[1];

  if (const auto role = role_from_string(cells[2])) {
    response.role = *role;
  } else {
    issues.push_back({record, "role",
                      "unknown role \"" + cells[2] +
                          "\" (valid: EDITOR_IN_CHIEF, SUBEDITOR)"});
  }
  if (const auto years = parse_int(cells[3])) {
    response.years_as_editor = static_cast<int>(*years);
  } else {
    issues.push_back({record, "years", "not an integer: \"" + cells[3] + "\""});
  }
  for (int q = 1; q <= 6; ++q) {
    const std::string& cell = cells[static_cast<std::size_t>(3 + q)];
    if (cell.empty()) continue;  // missing answers surface in validation
    std::string error;
    const auto index = resolve_answer_cell(cell, schema.question(q), error);
    if (index) {
      response.answers[static_cast<std::size_t>(q - 1)] = *index;
    } else {
      issues.push_back({record, "q" + std::to_string(q), error});
    }
  }
  {
    std::string error;
    if (auto strategies = parse_strategies(cells[10], error)) {
      response.strategies = std::move(*strategies);
    } else {
      issues.push_back({record, "strategies", error});
    }
  }
  if (issues.size() != before) return std::nullopt;
  return response;
}

ParsedResponses parse_responses_csv(std::istream& in,
                                    const QuestionnaireSchema& schema) {
  ParsedResponses result;
  const auto header = csv::read_record(in);
  if (!header || *header != kResponseHeader) {
    result.issues.push_back(
        {0, "header",
         "expected header \"" + csv::join(kResponseHeader) + "\""});
    return result;
  }
  std::size_t record = 0;
  while (auto row = csv::read_record(in)) {
    ++record;
    if (row->size() == 1 && (*row)[0].empty()) continue;  // blank line
    if (row->size() != kResponseHeader.size()) {
      result.issues.push_back(
          {record, "",
           "expected " + std::to_string(kResponseHeader.size()) +
               " fields, got " + std::to_string(row->size())});
      continue;
    }
    if (auto response = build_response(*row, record, schema, result.issues)) {
      result.responses.push_back(std::move(*response));
    }
  }
  return result;
}

ParsedResponses parse_responses_json(std::istream& in,
                                     const QuestionnaireSchema& schema) {
  ParsedResponses result;
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    result.issues.push_back({0, "", std::string("invalid JSON: ") + e.what()});
    return result;
  }
  if (!doc.is_array()) {
    result.issues.push_back({0, "", "expected a top-level JSON array"});
    return result;
  }

  std::size_t record = 0;
  for (const auto& item : doc) {
    ++record;
    if (!item.is_object()) {
      result.issues.push_back({record, "", "expected a JSON object"});
      continue;
    }
    // Re-encode the object as the CSV cell layout so both formats share one
    // resolution path.
    std::vector<std::string> cells(kResponseHeader.size());
    bool bad = false;
    auto cell_of = [&](const nlohmann::json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) {
        return std::to_string(v.get<long long>());
      }
      if (v.is_number()) return format_number(v.get<double>());
      return {};
    };
    for (std::size_t i = 0; i < kResponseHeader.size(); ++i) {
      const std::string& key = kResponseHeader[i];
      if (!item.contains(key)) {
        if (key == "strategies") continue;  // optional
        result.issues.push_back({record, key, "missing field"});
        bad = true;
        continue;
      }
      const auto& v = item.at(key);
      if (key == "strategies" && v.is_array()) {
        std::string joined;
        for (const auto& s : v) {
          if (!joined.empty()) joined += ";";
          joined += cell_of(s);
        }
        cells[i] = joined;
      } else {
        cells[i] = cell_of(v);
      }
    }
    if (bad) continue;
    if (auto response = build_response(cells, record, schema, result.issues)) {
      result.responses.push_back(std::move(*response));
    }
  }
  return result;
}

std::string strategies_cell(const EditorResponse& response) {
  std::string cell;
  for (const SearchStrategy& s : response.strategies) {
    if (!cell.empty()) cell += ";";
    cell += to_string(s.code);
    if (s.code == StrategyCode::Other && !s.other_text.empty()) {
      cell += ":" + s.other_text;
    }
  }
  return cell;
}

}  // namespace

ParsedResponses parse_responses(std::istream& in, ResponseFormat format,
                                const QuestionnaireSchema& schema) {
  return format == ResponseFormat::Csv ? parse_responses_csv(in, schema)
                                       : parse_responses_json(in, schema);
}

std::string write_responses_csv(std::span<const EditorResponse> responses) {
  std::string out = csv::join(kResponseHeader) + "\n";
  for (const EditorResponse& r : responses) {
    std::vector<std::string> cells = {r.editor_id, r.journal_id,
                                      to_string(r.role),
                                      std::to_string(r.years_as_editor)};
    for (const auto& answer : r.answers) {
      cells.push_back(answer ? std::to_string(*answer) : "");
    }
    cells.push_back(strategies_cell(r));
    out += csv::join(cells) + "\n";
  }
  return out;
}

std::string write_responses_json(std::span<const EditorResponse> responses) {
  nlohmann::json doc = nlohmann::json::array();
  for (const EditorResponse& r : responses) {
    nlohmann::json item;
    item["editor_id"] = r.editor_id;
    item["journal_id"] = r.journal_id;
    item["role"] = to_string(r.role);
    item["years"] = r.years_as_editor;
    for (int q = 1; q <= 6; ++q) {
      const auto& answer = r.answers[static_cast<std::size_t>(q - 1)];
      const std::string key = "q" + std::to_string(q);
      if (answer) item[key] = *answer;
      else item[key] = nullptr;
    }
    nlohmann::json strategies = nlohmann::json::array();
    for (const SearchStrategy& s : r.strategies) {
      std::string token = to_string(s.code);
      if (s.code == StrategyCode::Other && !s.other_text.empty()) {
        token += ":" + s.other_text;
      }
      strategies.push_back(token);
    }
    item["strategies"] = strategies;
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

ParsedJournals parse_journals(std::istream& in) {
  ParsedJournals result;
  const auto header = csv::read_record(in);
  if (!header || *header != kJournalHeader) {
    result.issues.push_back(
        {0, "header",
         "expected header \"" + csv::join(kJournalHeader) + "\""});
    return result;
  }
  std::size_t record = 0;
  while (auto row = csv::read_record(in)) {
    ++record;
    if (row->size() == 1 && (*row)[0].empty()) continue;
    if (row->size() != kJournalHeader.size()) {
      result.issues.push_back(
          {record, "",
           "expected " + std::to_string(kJournalHeader.size()) +
               " fields, got " + std::to_string(row->size())});
      continue;
    }
    JournalRecord journal;
    journal.journal_id = (*row)[0];
    journal.name = (*row)[1];
    if (!(*row)[2].empty()) journal.issn = (*row)[2];
    if (const auto group = index_group_from_string((*row)[3])) {
      journal.index_group = *group;
    } else {
      result.issues.push_back({record, "index_group",
                               "unknown index group \"" + (*row)[3] +
                                   "\" (valid: WOS, SCI)"});
      continue;
    }
    if (journal.journal_id.empty()) {
      result.issues.push_back({record, "journal_id", "missing journal_id"});
      continue;
    }
    result.journals.push_back(std::move(journal));
  }
  return result;
}

std::string write_journals_csv(std::span<const JournalRecord> journals) {
  std::string out = csv::join(kJournalHeader) + "\n";
  for (const JournalRecord& j : journals) {
    out += csv::join({j.journal_id, j.name, j.issn.value_or(""),
                      to_string(j.index_group)}) +
           "\n";
  }
  return out;
}

ParsedPrescored parse_prescored_table(std::istream& in) {
  ParsedPrescored result;
  const auto header = csv::read_record(in);
  bool has_expected = false;
  if (header && *header == kPrescoredHeaderFull) {
    has_expected = true;
  } else if (header && *header == kPrescoredHeaderShort) {
    has_expected = false;
  } else {
    result.issues.push_back(
        {0, "header",
         "expected header \"" + csv::join(kPrescoredHeaderShort) +
             "\" optionally followed by \"exp_sum,exp_mean,exp_e1,exp_area,"
             "exp_e2\""});
    return result;
  }
  const std::size_t expected_fields =
      has_expected ? kPrescoredHeaderFull.size() : kPrescoredHeaderShort.size();

  std::size_t record = 0;
  while (auto row = csv::read_record(in)) {
    ++record;
    if (row->size() == 1 && (*row)[0].empty()) continue;
    if (row->size() != expected_fields) {
      result.issues.push_back({record, "",
                               "expected " + std::to_string(expected_fields) +
                                   " fields, got " +
                                   std::to_string(row->size())});
      continue;
    }
    PrescoredEntry entry;
    entry.subject_id = (*row)[0];
    if (entry.subject_id.empty()) {
      result.issues.push_back({record, "journal_id", "missing journal_id"});
      continue;
    }

    const bool all_wf_blank = std::all_of(
        row->begin() + 1, row->begin() + 7,
        [](const std::string& cell) { return cell.empty(); });
    bool bad = false;
    if (!all_wf_blank) {
      std::array<double, 6> wf{};
      for (std::size_t i = 0; i < 6; ++i) {
        const std::string& cell = (*row)[i + 1];
        const auto value = parse_double(cell);
        if (!value) {
          result.issues.push_back({record, "wf" + std::to_string(i + 1),
                                   "not a number: \"" + cell + "\""});
          bad = true;
          continue;
        }
        if (*value < 1.0 || *value > 4.0) {
          result.issues.push_back({record, "wf" + std::to_string(i + 1),
                                   "weight factor out of [1,4]: " + cell});
          bad = true;
          continue;
        }
        wf[i] = *value;
      }
      if (!bad) entry.wf = WfVector(wf);
    }
    if (has_expected && !bad) {
      const std::array<std::optional<double>*, 5> slots = {
          &entry.expected.sum, &entry.expected.mean, &entry.expected.e1,
          &entry.expected.area, &entry.expected.e2};
      for (std::size_t i = 0; i < slots.size(); ++i) {
        const std::string& cell = (*row)[7 + i];
        if (cell.empty()) continue;
        const auto value = parse_double(cell);
        if (!value) {
          result.issues.push_back({record, kPrescoredHeaderFull[7 + i],
                                   "not a number: \"" + cell + "\""});
          bad = true;
          continue;
        }
        *slots[i] = *value;
      }
    }
    if (bad) continue;
    // A row without weight factors can only be used through its reference
    // values, so all five must be present.
    if (!entry.wf && !entry.expected.complete_all()) {
      result.issues.push_back(
          {record, "",
           "row carries neither weight factors nor the complete reference "
           "columns exp_sum..exp_e2"});
      continue;
    }
    result.entries.push_back(std::move(entry));
  }
  if (record == 0) {
    result.issues.push_back({0, "", "empty table body (no data rows)", true});
  }
  return result;
}

std::string write_prescored_csv(std::span<const PrescoredEntry> entries) {
  const bool with_expected = std::any_of(
      entries.begin(), entries.end(), [](const PrescoredEntry& e) {
        return !e.wf.has_value() || e.expected != ExpectedColumns{};
      });
  std::string out = csv::join(with_expected ? kPrescoredHeaderFull
                                            : kPrescoredHeaderShort) +
                    "\n";
  for (const PrescoredEntry& e : entries) {
    std::vector<std::string> cells = {e.subject_id};
    for (std::size_t i = 0; i < 6; ++i) {
      cells.push_back(e.wf ? format_number((*e.wf)[i]) : "");
    }
    if (with_expected) {
      const std::array<const std::optional<double>*, 5> slots = {
          &e.expected.sum, &e.expected.mean, &e.expected.e1, &e.expected.area,
          &e.expected.e2};
      for (const auto* slot : slots) {
        cells.push_back(*slot ? format_number(**slot) : "");
      }
    }
    out += csv::join(cells) + "\n";
  }
  return out;
}

}  // namespace peereff
