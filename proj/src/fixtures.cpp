#include <sstream>
#include <stdexcept>

#include "peereff/ingest.hpp"

namespace peereff {

namespace {

// Bundled survey results. Subjects are anonymized as letters; the exp_*
// columns carry the reference values shipped with the data and serve as
// regression targets for the scoring pipeline.

// 11 journals indexed in the Web of Science Core Collection; per-question
// weight factors averaged over each journal's responding editors.
constexpr const char* kWosTable =
    "journal_id,wf1,wf2,wf3,wf4,wf5,wf6,exp_sum,exp_mean,exp_e1,exp_area,exp_e2\n"
    "A,4,3.4,3.8,3,3.4,2.4,20.0,3.33,83.25,28.5,68.51\n"
    "B,3.1,3.1,3.2,1.9,3.1,2.6,17.0,2.83,70.75,22.5,54.09\n"
    "C,2,1.5,2.5,2.5,2.5,3,14.0,2.33,58.25,14.2,34.13\n"
    "D,4,4,4,3,2,2,19.0,3.17,79.25,26.1,62.74\n"
    "E,3,3,3,4,3,1,17.0,2.83,70.75,20.8,50.00\n"
    "F,4,4,3,4,4,3,22.0,3.67,91.75,34.6,83.17\n"
    "G,4,3,4,4,3,3,21.0,3.50,87.50,31.6,75.96\n"
    "H,2,1,1,4,3,4,15.0,2.50,62.50,16.9,40.62\n"
    "I,4,4,4,2,3,2,19.0,3.17,79.25,26.0,62.50\n"
    "J,4,4,4,4,4,3,23.0,3.83,95.75,38.1,91.59\n"
    "K,4,4,4,2,3,3,20.0,3.33,83.25,29.0,69.71\n";

// 13 journals indexed only in the national citation index; per-question
// weight factors were not released, so only the efficiency columns ship.
constexpr const char* kSciTable =
    "journal_id,wf1,wf2,wf3,wf4,wf5,wf6,exp_sum,exp_mean,exp_e1,exp_area,exp_e2\n"
    "A,,,,,,,9.5,1.58,39.58,6.2,15.10\n"
    "B,,,,,,,21.0,3.50,87.50,32.0,77.08\n"
    "C,,,,,,,22.0,3.67,91.67,35.0,84.38\n"
    "D,,,,,,,23.0,3.83,95.83,38.1,91.67\n"
    "E,,,,,,,17.0,2.83,70.83,19.9,47.92\n"
    "F,,,,,,,22.0,3.67,91.67,34.6,83.33\n"
    "G,,,,,,,21.0,3.50,87.50,32.0,77.08\n"
    "H,,,,,,,20.0,3.33,83.33,28.5,68.75\n"
    "I,,,,,,,17.0,2.83,70.83,19.2,46.30\n"
    "J,,,,,,,20.0,3.33,83.33,29.4,70.83\n"
    "K,,,,,,,21.0,3.50,87.50,32.0,77.08\n"
    "L,,,,,,,22.7,3.78,94.44,36.9,88.89\n"
    "M,,,,,,,22.0,3.67,91.67,35.0,84.38\n";

// 14 subeditors of one WoS journal, scored individually.
constexpr const char* kJscsTable =
    "journal_id,wf1,wf2,wf3,wf4,wf5,wf6,exp_sum,exp_mean,exp_e1,exp_area,exp_e2\n"
    "A,,,,,,,17.0,2.83,70.75,20.7,49.76\n"
    "B,,,,,,,12.0,2.00,50.00,8.7,20.91\n"
    "C,,,,,,,23.0,3.83,95.75,38.1,91.59\n"
    "D,,,,,,,18.0,3.00,75.00,22.1,53.12\n"
    "E,,,,,,,17.0,2.83,70.75,21.6,51.92\n"
    "F,,,,,,,20.0,3.33,83.25,29.0,69.71\n"
    "G,,,,,,,15.0,2.50,62.50,16.0,38.46\n"
    "H,,,,,,,15.0,2.50,62.50,16.0,38.46\n"
    "I,,,,,,,19.0,3.17,79.25,26.0,62.50\n"
    "J,,,,,,,17.0,2.83,70.75,19.9,47.84\n"
    "K,,,,,,,20.0,3.33,83.25,28.6,68.75\n"
    "L,,,,,,,17.0,2.83,70.75,20.4,49.04\n"
    "M,,,,,,,12.0,2.00,50.00,9.5,22.84\n"
    "N,,,,,,,18.0,3.00,75.00,23.4,56.25\n";

std::vector<PrescoredEntry> parse_embedded(const char* text,
                                           const char* which) {
  std::istringstream in(text);
  ParsedPrescored parsed = parse_prescored_table(in);
  for (const ParseIssue& issue : parsed.issues) {
    if (!issue.warning) {
      throw std::logic_error(std::string("bundled fixture ") + which +
                             " failed to parse: " + issue.message);
    }
  }
  return std::move(parsed.entries);
}

std::vector<JournalRecord> letter_journals(
    const std::vector<PrescoredEntry>& entries, IndexGroup group) {
  std::vector<JournalRecord> journals;
  journals.reserve(entries.size());
  for (const PrescoredEntry& e : entries) {
    journals.push_back({e.subject_id, "Journal " + e.subject_id, std::nullopt,
                        group, {}});
  }
  return journals;
}

}  // namespace

std::map<std::string, Dataset> load_fixtures() {
  std::map<std::string, Dataset> fixtures;

  {
    Dataset wos;
    wos.prescored = parse_embedded(kWosTable, "wos");
    wos.journals = letter_journals(wos.prescored, IndexGroup::Wos);
    wos.provenance =
        "bundled: 11 WoS-indexed journals, journal-level weight factors with "
        "reference efficiency columns";
    fixtures.emplace("wos", std::move(wos));
  }
  {
    Dataset sci;
    sci.prescored = parse_embedded(kSciTable, "sci");
    sci.journals = letter_journals(sci.prescored, IndexGroup::Sci);
    sci.provenance =
        "bundled: 13 nationally indexed journals, reference efficiency "
        "values only";
    fixtures.emplace("sci", std::move(sci));
  }
  {
    Dataset jscs;
    jscs.prescored = parse_embedded(kJscsTable, "jscs");
    JournalRecord journal{"JSCS", "Journal of the Serbian Chemical Society",
                          std::nullopt, IndexGroup::Wos, {}};
    for (const PrescoredEntry& e : jscs.prescored) {
      journal.editors.push_back(e.subject_id);
    }
    jscs.journals.push_back(std::move(journal));
    jscs.provenance =
        "bundled: 14 subeditors of one WoS journal, scored individually, "
        "reference efficiency values only";
    fixtures.emplace("jscs", std::move(jscs));
  }
  return fixtures;
}

}  // namespace peereff
