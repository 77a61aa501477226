#include "peereff/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "peereff/csv.hpp"

namespace peereff {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NamedDataset {
  std::string name;
  Dataset data;
};

std::string fmt(const char* spec, double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("error while reading " + path.string());
  }
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << content;
  if (!out) {
    throw IoError("error while writing " + path.string());
  }
}

std::string sanitize_filename(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "_" : out;
}

ResponseFormat response_format_for(const std::filesystem::path& path) {
  return path.extension() == ".json" ? ResponseFormat::Json
                                     : ResponseFormat::Csv;
}

// Loads fixtures and/or user files. Parse issues are collected per dataset;
// I/O problems throw IoError.
std::vector<NamedDataset> load_sources(
    const RunConfig& config,
    std::map<std::string, std::vector<ParseIssue>>& issues) {
  std::vector<NamedDataset> sources;

  if (!config.fixtures.empty()) {
    auto fixtures = load_fixtures();
    for (const std::string& name : config.fixtures) {
      const auto it = fixtures.find(name);
      if (it == fixtures.end()) {
        std::string known;
        for (const auto& [key, _] : fixtures) {
          if (!known.empty()) known += ", ";
          known += key;
        }
        throw IoError("unknown fixture \"" + name + "\" (bundled: " + known +
                      ")");
      }
      sources.push_back({name, it->second});
    }
  }

  if (config.responses_path || config.journals_path ||
      config.prescored_path) {
    NamedDataset user;
    user.name = "user";
    user.data.provenance = "user-supplied files";
    if (config.journals_path) {
      std::istringstream in(read_text_file(*config.journals_path));
      ParsedJournals parsed = parse_journals(in);
      user.data.journals = std::move(parsed.journals);
      for (ParseIssue& issue : parsed.issues) {
        issue.field = config.journals_path->string() + ":" + issue.field;
        issues[user.name].push_back(std::move(issue));
      }
    }
    if (config.responses_path) {
      std::istringstream in(read_text_file(*config.responses_path));
      ParsedResponses parsed =
          parse_responses(in, response_format_for(*config.responses_path));
      user.data.responses = std::move(parsed.responses);
      for (ParseIssue& issue : parsed.issues) {
        issue.field = config.responses_path->string() + ":" + issue.field;
        issues[user.name].push_back(std::move(issue));
      }
    }
    if (config.prescored_path) {
      std::istringstream in(read_text_file(*config.prescored_path));
      ParsedPrescored parsed = parse_prescored_table(in);
      user.data.prescored = std::move(parsed.entries);
      for (ParseIssue& issue : parsed.issues) {
        issue.field = config.prescored_path->string() + ":" + issue.field;
        issues[user.name].push_back(std::move(issue));
      }
    }
    sources.push_back(std::move(user));
  }

  if (sources.empty()) {
    throw IoError("no data source: pass --fixture or input files");
  }
  return sources;
}

void print_issues(const std::string& dataset,
                  const std::vector<ParseIssue>& parse_issues,
                  const std::vector<ValidationIssue>& validation_issues,
                  std::ostream& out) {
  for (const ParseIssue& issue : parse_issues) {
    out << dataset << ": record " << issue.record;
    if (!issue.field.empty()) out << ", field " << issue.field;
    out << ": " << (issue.warning ? "warning: " : "") << issue.message
        << "\n";
  }
  for (const ValidationIssue& issue : validation_issues) {
    out << dataset << ": " << issue.path << ": " << issue.message << "\n";
  }
}

// ---------------------------------------------------------------------------
// Scoring pipeline
// ---------------------------------------------------------------------------

// A fully resolved subject for reporting/analysis. Efficiency values come
// from the dataset's reference columns when present, otherwise they are
// recomputed from the weight factors.
struct SubjectRecord {
  std::string id;
  std::optional<WfVector> wf;
  double sum = 0.0;
  double mean = 0.0;
  double e1 = 0.0;
  double area = 0.0;
  double e2 = 0.0;
  std::optional<double> years;
  std::optional<double> n_strategies;
};

SubjectRecord subject_from_prescored(const PrescoredEntry& entry) {
  SubjectRecord record;
  record.id = entry.subject_id;
  record.wf = entry.wf;
  if (entry.wf) {
    const EfficiencySummary computed =
        efficiency_summary(entry.subject_id, *entry.wf);
    record.sum = computed.sum_wf;
    record.mean = computed.mean_wf;
    record.e1 = computed.e1_percent;
    record.area = computed.hexagon_area_au;
    record.e2 = computed.e2_percent;
  }
  if (entry.expected.sum) record.sum = *entry.expected.sum;
  if (entry.expected.mean) record.mean = *entry.expected.mean;
  if (entry.expected.e1) record.e1 = *entry.expected.e1;
  if (entry.expected.area) record.area = *entry.expected.area;
  if (entry.expected.e2) record.e2 = *entry.expected.e2;
  return record;
}

SubjectRecord subject_from_summary(const EfficiencySummary& summary) {
  SubjectRecord record;
  record.id = summary.subject_id;
  record.wf = summary.wf;
  record.sum = summary.sum_wf;
  record.mean = summary.mean_wf;
  record.e1 = summary.e1_percent;
  record.area = summary.hexagon_area_au;
  record.e2 = summary.e2_percent;
  return record;
}

EfficiencySummary summary_from_subject(const SubjectRecord& record) {
  EfficiencySummary summary;
  summary.subject_id = record.id;
  summary.wf = record.wf.value_or(WfVector{});
  summary.sum_wf = record.sum;
  summary.mean_wf = record.mean;
  summary.e1_percent = record.e1;
  summary.hexagon_area_au = record.area;
  summary.e2_percent = record.e2;
  return summary;
}

// Journal-level subjects built from editor responses: weight factors are
// averaged per journal, efficiency is computed from the averaged vector.
std::vector<SubjectRecord> journal_subjects_from_responses(
    const Dataset& dataset, const QuestionnaireSchema& schema) {
  std::map<std::string, std::vector<const EditorResponse*>> by_journal;
  for (const EditorResponse& response : dataset.responses) {
    by_journal[response.journal_id].push_back(&response);
  }
  std::vector<SubjectRecord> subjects;
  for (const auto& [journal_id, responses] : by_journal) {
    std::vector<WfVector> vectors;
    double years = 0.0, strategies = 0.0;
    vectors.reserve(responses.size());
    for (const EditorResponse* response : responses) {
      vectors.push_back(wf_vector(*response, schema));
      years += response->years_as_editor;
      strategies += static_cast<double>(response->strategies.size());
    }
    const WfVector averaged = aggregate_journal(vectors);
    SubjectRecord record =
        subject_from_summary(efficiency_summary(journal_id, averaged));
    record.years = years / static_cast<double>(responses.size());
    record.n_strategies = strategies / static_cast<double>(responses.size());
    subjects.push_back(std::move(record));
  }
  return subjects;
}

std::vector<SubjectRecord> editor_subjects(
    std::span<const EditorResponse> responses,
    const QuestionnaireSchema& schema) {
  std::vector<SubjectRecord> subjects;
  subjects.reserve(responses.size());
  for (const EditorResponse& response : responses) {
    SubjectRecord record = subject_from_summary(
        efficiency_summary(response.editor_id, wf_vector(response, schema)));
    record.years = response.years_as_editor;
    record.n_strategies = static_cast<double>(response.strategies.size());
    subjects.push_back(std::move(record));
  }
  return subjects;
}

const char* table_extension(TableFormat format) {
  return format == TableFormat::Markdown ? ".md" : ".csv";
}

// ---------------------------------------------------------------------------
// Analysis pipeline
// ---------------------------------------------------------------------------

struct AnalysisGroup {
  std::string name;
  std::vector<SubjectRecord> subjects;

  std::vector<double> series(Measure measure) const {
    std::vector<double> values;
    values.reserve(subjects.size());
    for (const SubjectRecord& s : subjects) {
      values.push_back(measure == Measure::E1 ? s.e1 : s.e2);
    }
    return values;
  }
};

std::vector<AnalysisGroup> build_groups(
    const std::vector<NamedDataset>& sources, const RunConfig& config,
    const QuestionnaireSchema& schema, std::vector<std::string>& notes) {
  std::vector<AnalysisGroup> groups;

  for (const NamedDataset& source : sources) {
    if (source.name != "user") {
      // Each bundled dataset is one group.
      AnalysisGroup group;
      group.name = source.name;
      for (const PrescoredEntry& entry : source.data.prescored) {
        group.subjects.push_back(subject_from_prescored(entry));
      }
      if (!source.data.responses.empty()) {
        for (SubjectRecord& record :
             journal_subjects_from_responses(source.data, schema)) {
          group.subjects.push_back(std::move(record));
        }
      }
      groups.push_back(std::move(group));
      continue;
    }

    // User data: group journals by index membership.
    std::map<std::string, IndexGroup> journal_group;
    for (const JournalRecord& journal : source.data.journals) {
      journal_group[journal.journal_id] = journal.index_group;
    }
    AnalysisGroup wos{"WOS", {}};
    AnalysisGroup sci{"SCI", {}};
    auto place = [&](SubjectRecord record) {
      const auto it = journal_group.find(record.id);
      if (it == journal_group.end()) {
        notes.push_back("subject " + record.id +
                        " has no journal record; placed in WOS group");
        wos.subjects.push_back(std::move(record));
      } else if (it->second == IndexGroup::Wos) {
        wos.subjects.push_back(std::move(record));
      } else {
        sci.subjects.push_back(std::move(record));
      }
    };
    for (const PrescoredEntry& entry : source.data.prescored) {
      place(subject_from_prescored(entry));
    }
    for (SubjectRecord& record :
         journal_subjects_from_responses(source.data, schema)) {
      place(std::move(record));
    }
    if (!wos.subjects.empty()) groups.push_back(std::move(wos));
    if (!sci.subjects.empty()) groups.push_back(std::move(sci));

    if (config.group_by.starts_with("journal:")) {
      const std::string journal_id = config.group_by.substr(8);
      std::vector<EditorResponse> carved;
      for (const EditorResponse& response : source.data.responses) {
        if (response.journal_id == journal_id) carved.push_back(response);
      }
      if (carved.empty()) {
        notes.push_back("no responses for journal \"" + journal_id +
                        "\"; editor-level group skipped");
      } else {
        AnalysisGroup editors;
        editors.name = journal_id;
        editors.subjects = editor_subjects(carved, schema);
        groups.push_back(std::move(editors));
      }
    }
  }
  return groups;
}

// Correlation matrix columns available for a group.
std::vector<std::pair<std::string, std::vector<double>>> group_columns(
    const AnalysisGroup& group) {
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  const std::size_t n = group.subjects.size();

  const bool all_wf = std::all_of(
      group.subjects.begin(), group.subjects.end(),
      [](const SubjectRecord& s) { return s.wf.has_value(); });
  if (all_wf) {
    for (std::size_t q = 0; q < 6; ++q) {
      std::vector<double> column(n);
      for (std::size_t i = 0; i < n; ++i) column[i] = (*group.subjects[i].wf)[q];
      columns.emplace_back("q" + std::to_string(q + 1), std::move(column));
    }
  }
  auto push = [&](const char* name, auto getter) {
    std::vector<double> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = getter(group.subjects[i]);
    columns.emplace_back(name, std::move(column));
  };
  push("mean_wf", [](const SubjectRecord& s) { return s.mean; });
  push("e1", [](const SubjectRecord& s) { return s.e1; });
  push("e2", [](const SubjectRecord& s) { return s.e2; });

  const bool all_years = std::all_of(
      group.subjects.begin(), group.subjects.end(),
      [](const SubjectRecord& s) { return s.years.has_value(); });
  if (all_years) {
    push("years", [](const SubjectRecord& s) { return *s.years; });
  }
  const bool all_strategies = std::all_of(
      group.subjects.begin(), group.subjects.end(),
      [](const SubjectRecord& s) { return s.n_strategies.has_value(); });
  if (all_strategies) {
    push("n_strategies",
         [](const SubjectRecord& s) { return *s.n_strategies; });
  }
  return columns;
}

}  // namespace

std::vector<ValidationIssue> validate_dataset(
    const Dataset& dataset, const QuestionnaireSchema& schema) {
  std::vector<ValidationIssue> issues;

  std::set<std::string> journal_ids;
  for (const JournalRecord& journal : dataset.journals) {
    if (!journal_ids.insert(journal.journal_id).second) {
      issues.push_back({"journal " + journal.journal_id,
                        "duplicate journal id"});
    }
  }
  // Without a journal catalogue there is nothing to resolve references
  // against; responses then stand on their own journal ids.
  if (dataset.journals.empty()) {
    for (const EditorResponse& response : dataset.responses) {
      journal_ids.insert(response.journal_id);
    }
  }
  std::set<std::string> prescored_ids;
  for (const PrescoredEntry& entry : dataset.prescored) {
    if (!prescored_ids.insert(entry.subject_id).second) {
      issues.push_back({"prescored " + entry.subject_id,
                        "duplicate pre-scored subject id"});
    }
  }
  std::set<std::string> response_journals;
  for (const EditorResponse& response : dataset.responses) {
    response_journals.insert(response.journal_id);
    for (ValidationIssue& issue :
         validate_response(response, schema, journal_ids)) {
      issues.push_back(std::move(issue));
    }
  }
  // A journal is either pre-scored or scored from responses, not both.
  for (const std::string& journal_id : response_journals) {
    if (prescored_ids.contains(journal_id)) {
      issues.push_back({"journal " + journal_id,
                        "appears both pre-scored and in responses"});
    }
  }
  return issues;
}

int cmd_validate(const RunConfig& config, std::ostream& out,
                 std::ostream& err) {
  try {
    std::map<std::string, std::vector<ParseIssue>> parse_issues;
    const std::vector<NamedDataset> sources =
        load_sources(config, parse_issues);
    const QuestionnaireSchema& schema = QuestionnaireSchema::standard();

    bool clean = true;
    for (const NamedDataset& source : sources) {
      const std::vector<ValidationIssue> validation_issues =
          validate_dataset(source.data, schema);
      const auto& parsed = parse_issues[source.name];
      print_issues(source.name, parsed, validation_issues, out);
      const bool has_error =
          !validation_issues.empty() ||
          std::any_of(parsed.begin(), parsed.end(),
                      [](const ParseIssue& i) { return !i.warning; });
      if (has_error) {
        clean = false;
      } else {
        out << source.name << ": OK (" << source.data.journals.size()
            << " journals, " << source.data.responses.size() << " responses, "
            << source.data.prescored.size() << " pre-scored subjects)\n";
      }
    }
    return clean ? kExitOk : kExitValidation;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

int cmd_score(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::map<std::string, std::vector<ParseIssue>> parse_issues;
    const std::vector<NamedDataset> sources =
        load_sources(config, parse_issues);
    const QuestionnaireSchema& schema = QuestionnaireSchema::standard();

    // Refuse to score unusable data.
    for (const NamedDataset& source : sources) {
      const auto validation_issues = validate_dataset(source.data, schema);
      const auto& parsed = parse_issues[source.name];
      const bool has_error =
          !validation_issues.empty() ||
          std::any_of(parsed.begin(), parsed.end(),
                      [](const ParseIssue& i) { return !i.warning; });
      if (has_error) {
        print_issues(source.name, parsed, validation_issues, err);
        return kExitValidation;
      }
    }

    std::filesystem::create_directories(config.out_dir);

    for (const NamedDataset& source : sources) {
      // Per-editor table.
      if (!source.data.responses.empty()) {
        std::vector<EfficiencySummary> rows;
        for (const SubjectRecord& record :
             editor_subjects(source.data.responses, schema)) {
          rows.push_back(summary_from_subject(record));
        }
        const auto path =
            config.out_dir / (source.name + std::string("_editor_summary") +
                              table_extension(config.format));
        write_text_file(path,
                        emit_table(rows, summarize_columns(rows),
                                   config.format));
        out << source.name << ": wrote " << path.string() << " ("
            << rows.size() << " editors)\n";
      }

      // Per-journal table: pre-scored rows first (input order), then
      // journals aggregated from responses (sorted by id).
      std::vector<SubjectRecord> journal_records;
      for (const PrescoredEntry& entry : source.data.prescored) {
        journal_records.push_back(subject_from_prescored(entry));
      }
      if (!source.data.responses.empty()) {
        for (SubjectRecord& record :
             journal_subjects_from_responses(source.data, schema)) {
          journal_records.push_back(std::move(record));
        }
      }
      if (journal_records.empty()) continue;

      std::vector<EfficiencySummary> wf_rows;
      std::vector<EValueRow> e_rows;
      for (const SubjectRecord& record : journal_records) {
        if (record.wf) {
          wf_rows.push_back(summary_from_subject(record));
        } else {
          e_rows.push_back({record.id, record.sum, record.mean, record.e1,
                            record.area, record.e2});
        }
      }

      if (!wf_rows.empty()) {
        const auto path =
            config.out_dir / (source.name + std::string("_journal_summary") +
                              table_extension(config.format));
        write_text_file(path,
                        emit_table(wf_rows, summarize_columns(wf_rows),
                                   config.format));
        out << source.name << ": wrote " << path.string() << " ("
            << wf_rows.size() << " journals)\n";
      }
      if (!e_rows.empty()) {
        // Subjects without per-question weight factors go to a reduced
        // table; it takes the main name when it is the only one.
        const std::string stem = wf_rows.empty() ? "_journal_summary"
                                                 : "_journal_evalues";
        const auto path = config.out_dir /
                          (source.name + stem + table_extension(config.format));
        write_text_file(path,
                        emit_e_table(e_rows, summarize_e_columns(e_rows),
                                     config.format));
        out << source.name << ": wrote " << path.string() << " ("
            << e_rows.size() << " subjects, efficiency values only)\n";
      }

      if (config.charts) {
        std::size_t written = 0;
        for (const SubjectRecord& record : journal_records) {
          if (!record.wf) continue;
          ChartSpec spec;
          spec.title = source.name + " " + record.id;
          spec.subjects.push_back({record.id, *record.wf, ""});
          const auto path =
              config.out_dir /
              ("radar_" + sanitize_filename(source.name) + "_" +
               sanitize_filename(record.id) + ".svg");
          write_text_file(path, render_radar_svg(spec));
          ++written;
        }
        if (written > 0) {
          out << source.name << ": wrote " << written << " radar charts\n";
        }
        if (written < journal_records.size()) {
          out << source.name << ": warning: "
              << journal_records.size() - written
              << " subjects lack per-question weight factors; no radar "
                 "charts for them\n";
        }
      }
    }
    return kExitOk;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

namespace {

// One analysis section rendered either as a Markdown pipe table or as its
// own CSV file.
struct Section {
  std::string title;
  std::string slug;  // CSV file stem
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> remarks;  // free-form lines under the table
};

std::string section_markdown(const Section& section) {
  std::string md = "## " + section.title + "\n\n";
  if (!section.rows.empty()) {
    md += "|";
    for (const std::string& cell : section.header) md += " " + cell + " |";
    md += "\n|";
    for (std::size_t i = 0; i < section.header.size(); ++i) md += " --- |";
    md += "\n";
    for (const auto& row : section.rows) {
      md += "|";
      for (const std::string& cell : row) md += " " + cell + " |";
      md += "\n";
    }
    md += "\n";
  }
  for (const std::string& remark : section.remarks) md += remark + "\n\n";
  return md;
}

std::string section_csv(const Section& section) {
  std::string text = csv::join(section.header) + "\n";
  for (const auto& row : section.rows) text += csv::join(row) + "\n";
  return text;
}

}  // namespace

int cmd_analyze(const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  try {
    std::map<std::string, std::vector<ParseIssue>> parse_issues;
    const std::vector<NamedDataset> sources =
        load_sources(config, parse_issues);
    const QuestionnaireSchema& schema = QuestionnaireSchema::standard();

    for (const NamedDataset& source : sources) {
      const auto validation_issues = validate_dataset(source.data, schema);
      const auto& parsed = parse_issues[source.name];
      const bool has_error =
          !validation_issues.empty() ||
          std::any_of(parsed.begin(), parsed.end(),
                      [](const ParseIssue& i) { return !i.warning; });
      if (has_error) {
        print_issues(source.name, parsed, validation_issues, err);
        return kExitValidation;
      }
    }

    std::vector<std::string> notes;
    std::vector<AnalysisGroup> groups =
        build_groups(sources, config, schema, notes);
    if (groups.empty()) {
      err << "no analysis groups could be formed\n";
      return kExitValidation;
    }

    std::vector<Measure> measures;
    if (config.measure != MeasureSelection::E2) measures.push_back(Measure::E1);
    if (config.measure != MeasureSelection::E1) measures.push_back(Measure::E2);

    std::filesystem::create_directories(config.out_dir);

    std::vector<Section> sections;
    std::size_t computed_statistics = 0;
    // Statistical-domain failures (constant series, all-tied ranks, ...)
    // do not abort the run but surface through the exit code.
    bool domain_failure = false;

    {
      Section descriptives{"Group descriptives",
                           "descriptives",
                           {"group", "n", "measure", "mean", "sd", "cv",
                            "max"},
                           {},
                           {}};
      for (const AnalysisGroup& group : groups) {
        for (Measure measure : measures) {
          const std::vector<double> series = group.series(measure);
          const DescriptiveStats stats = descriptive_stats(series);
          descriptives.rows.push_back(
              {group.name, std::to_string(series.size()), to_string(measure),
               fmt("%.3f", stats.mean),
               stats.sd ? fmt("%.3f", *stats.sd) : "",
               stats.cv ? fmt("%.4f", *stats.cv) : "",
               fmt("%.2f", stats.max)});
          ++computed_statistics;
        }
      }
      sections.push_back(std::move(descriptives));
    }

    {
      Section kendall{"Rank coherence (Kendall tau-b, E1 vs E2)",
                      "kendall",
                      {"group", "n", "tau_b", "concordant", "discordant"},
                      {},
                      {}};
      for (const AnalysisGroup& group : groups) {
        try {
          const RankCoherence rc = kendall_tau_b(group.series(Measure::E1),
                                                 group.series(Measure::E2));
          kendall.rows.push_back({group.name, std::to_string(rc.n),
                                  fmt("%.3f", rc.tau_b),
                                  std::to_string(rc.concordant),
                                  std::to_string(rc.discordant)});
          ++computed_statistics;
        } catch (const std::domain_error& e) {
          domain_failure = true;
          notes.push_back("kendall " + group.name + ": failed (" + e.what() +
                          ")");
        } catch (const std::exception& e) {
          notes.push_back("kendall " + group.name + ": skipped (" + e.what() +
                          ")");
        }
      }
      sections.push_back(std::move(kendall));
    }

    {
      Section correlations{"Correlations (Pearson r)",
                           "correlations",
                           {"group", "column_a", "column_b", "n", "r",
                            "strong"},
                           {},
                           {}};
      for (const AnalysisGroup& group : groups) {
        if (group.subjects.size() < 3) {
          notes.push_back("correlations " + group.name +
                          ": skipped (fewer than 3 subjects)");
          continue;
        }
        const auto columns = group_columns(group);
        for (std::size_t i = 0; i < columns.size(); ++i) {
          for (std::size_t j = i + 1; j < columns.size(); ++j) {
            try {
              const CorrelationResult r =
                  pearson(columns[i].second, columns[j].second);
              correlations.rows.push_back(
                  {group.name, columns[i].first, columns[j].first,
                   std::to_string(r.n), fmt("%.3f", r.r),
                   r.strong ? "strong" : ""});
              ++computed_statistics;
            } catch (const std::domain_error&) {
              domain_failure = true;
              correlations.rows.push_back({group.name, columns[i].first,
                                           columns[j].first,
                                           std::to_string(
                                               group.subjects.size()),
                                           "n/a", ""});
            }
          }
        }
      }
      sections.push_back(std::move(correlations));
    }

    {
      Section mw{"Group comparison (Mann-Whitney U)",
                 "mannwhitney",
                 {"measure", "group_a", "group_b", "n1", "n2", "u", "z",
                  "p_two_sided", "verdict"},
                 {},
                 {}};
      if (groups.size() < 2) {
        mw.remarks.push_back("Only one group; nothing to compare.");
        notes.push_back("mann-whitney: skipped (fewer than 2 groups)");
      } else {
        for (Measure measure : measures) {
          std::vector<GroupSeries> named;
          for (const AnalysisGroup& group : groups) {
            named.push_back({group.name, group.series(measure)});
          }
          for (const PairwiseComparison& cmp :
               compare_groups(named, measure)) {
            mw.rows.push_back(
                {to_string(measure), cmp.group_a, cmp.group_b,
                 std::to_string(cmp.test.n1), std::to_string(cmp.test.n2),
                 fmt("%.1f", cmp.test.u_statistic), fmt("%.3f", cmp.test.z),
                 fmt("%.4f", cmp.test.p_two_sided),
                 cmp.test.significant ? "significant at 0.05"
                                      : "not significant"});
            ++computed_statistics;
          }
        }
      }
      sections.push_back(std::move(mw));
    }

    {
      Section ranksize{"Rank-size fits",
                       "ranksize",
                       {"measure", "group", "model", "a", "b", "r_squared"},
                       {},
                       {}};
      for (Measure measure : measures) {
        std::vector<RankSizeGroup> figure_groups;
        std::size_t linear_wins = 0, fitted = 0;
        for (const AnalysisGroup& group : groups) {
          const std::vector<double> series = group.series(measure);
          if (series.size() < 3) {
            notes.push_back("rank-size " + group.name + " " +
                            to_string(measure) +
                            ": skipped (fewer than 3 subjects)");
            continue;
          }
          try {
            const RankSizeFit power = rank_size_fit(series, FitModel::Power);
            const RankSizeFit linear =
                rank_size_fit(series, FitModel::Linear);
            ranksize.rows.push_back({to_string(measure), group.name, "power",
                                     fmt("%.4f", power.a),
                                     fmt("%.4f", power.b),
                                     fmt("%.4f", power.r_squared)});
            ranksize.rows.push_back({to_string(measure), group.name, "linear",
                                     fmt("%.4f", linear.a),
                                     fmt("%.4f", linear.b),
                                     fmt("%.4f", linear.r_squared)});
            figure_groups.push_back({group.name, power, linear});
            ++fitted;
            if (linear.r_squared >= power.r_squared) ++linear_wins;
            computed_statistics += 2;
          } catch (const std::domain_error& e) {
            domain_failure = true;
            notes.push_back("rank-size " + group.name + " " +
                            to_string(measure) + ": failed (" + e.what() +
                            ")");
          } catch (const std::exception& e) {
            notes.push_back("rank-size " + group.name + " " +
                            to_string(measure) + ": skipped (" + e.what() +
                            ")");
          }
        }
        if (fitted > 0) {
          ranksize.remarks.push_back(
              "Linear R^2 >= power R^2 in " + std::to_string(linear_wins) +
              " of " + std::to_string(fitted) + " groups (" +
              to_string(measure) + ").");
          const auto path =
              config.out_dir /
              ("ranksize_" + (measure == Measure::E1 ? std::string("e1")
                                                     : std::string("e2")) +
               ".svg");
          write_text_file(
              path,
              render_rank_size_svg(figure_groups,
                                   "Rank-size: " + to_string(measure),
                                   to_string(measure) + " / %"));
          out << "wrote " << path.string() << "\n";
        }
      }
      sections.push_back(std::move(ranksize));
    }

    if (computed_statistics == 0) {
      err << "no statistic could be computed from the given groups\n";
      return kExitStats;
    }

    if (config.format == TableFormat::Markdown) {
      std::string md = "# Peer-review efficiency analysis\n\n";
      for (const Section& section : sections) md += section_markdown(section);
      if (!notes.empty()) {
        md += "## Notes\n\n";
        for (const std::string& note : notes) md += "- " + note + "\n";
      }
      const auto path = config.out_dir / "analysis.md";
      write_text_file(path, md);
      out << "wrote " << path.string() << "\n";
    } else {
      for (const Section& section : sections) {
        const auto path =
            config.out_dir / ("analysis_" + section.slug + ".csv");
        write_text_file(path, section_csv(section));
        out << "wrote " << path.string() << "\n";
      }
      if (!notes.empty()) {
        std::string text = "note\n";
        for (const std::string& note : notes) text += csv::escape(note) + "\n";
        const auto path = config.out_dir / "analysis_notes.csv";
        write_text_file(path, text);
        out << "wrote " << path.string() << "\n";
      }
    }
    for (const std::string& note : notes) out << "note: " << note << "\n";
    if (domain_failure) {
      err << "statistical-domain failure in at least one requested "
             "statistic; see the notes section\n";
      return kExitStats;
    }
    return kExitOk;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::domain_error& e) {
    err << "statistical failure: " << e.what() << "\n";
    return kExitStats;
  }
}

}  // namespace peereff
