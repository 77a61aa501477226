#include <sstream>

#include "doctest.h"
#include "peereff/ingest.hpp"
#include "peereff/scoring.hpp"

using namespace peereff;

namespace {

constexpr const char* kResponsesHeader =
    "editor_id,journal_id,role,years,q1,q2,q3,q4,q5,q6,strategies\n";

ParsedResponses parse_csv(const std::string& body) {
  std::istringstream in(std::string(kResponsesHeader) + body);
  return parse_responses(in, ResponseFormat::Csv);
}

}  // namespace

TEST_CASE("parse_responses: direct option indices") {
  const auto parsed = parse_csv(
      "E1,J1,EDITOR_IN_CHIEF,12,4,4,4,4,4,3,BIBLIOGRAPHIC_DB;SELF_REVIEW\n");
  REQUIRE(parsed.issues.empty());
  REQUIRE(parsed.responses.size() == 1);
  const EditorResponse& r = parsed.responses[0];
  CHECK(r.editor_id == "E1");
  CHECK(r.journal_id == "J1");
  CHECK(r.role == EditorRole::EditorInChief);
  CHECK(r.years_as_editor == 12);
  CHECK(wf_vector(r, QuestionnaireSchema::standard()) ==
        WfVector({4, 4, 4, 4, 4, 3}));
  REQUIRE(r.strategies.size() == 2);
}

TEST_CASE("parse_responses: raw percentage cells are bucketed at load time") {
  const auto parsed =
      parse_csv("E1,J1,SUBEDITOR,7,2,30%,17%,raw:1.5,3,2,\n");
  REQUIRE(parsed.issues.empty());
  REQUIRE(parsed.responses.size() == 1);
  const EditorResponse& r = parsed.responses[0];
  CHECK(r.answers[1] == 3);  // 30% -> mid band
  CHECK(r.answers[2] == 4);  // 17% -> below 25
  CHECK(r.answers[3] == 4);  // raw 1.5% of inadequate reports
  CHECK(r.strategies.empty());
}

TEST_CASE("parse_responses: out-of-range option index is a located error") {
  const auto parsed = parse_csv("E1,J1,SUBEDITOR,7,5,4,4,4,4,4,\n");
  REQUIRE(parsed.responses.empty());
  REQUIRE(parsed.issues.size() == 1);
  CHECK(parsed.issues[0].record == 1);
  CHECK(parsed.issues[0].field == "q1");
  CHECK(parsed.issues[0].message.find("out of 1..4") != std::string::npos);
}

TEST_CASE("parse_responses: unknown strategy lists the valid codes") {
  const auto parsed = parse_csv("E1,J1,SUBEDITOR,7,4,4,4,4,4,4,FRIENDS\n");
  REQUIRE(parsed.responses.empty());
  REQUIRE(parsed.issues.size() == 1);
  CHECK(parsed.issues[0].field == "strategies");
  CHECK(parsed.issues[0].message.find("PRIOR_REVIEWER") != std::string::npos);
  CHECK(parsed.issues[0].message.find("OTHER") != std::string::npos);
}

TEST_CASE("parse_responses: one bad row does not poison the rest") {
  const auto parsed = parse_csv(
      "E1,J1,SUBEDITOR,7,4,4,4,4,4,4,\n"
      "E2,J1,SUBEDITOR,seven,4,4,4,4,4,4,\n"
      "E3,J1,SUBEDITOR,3,4,4,4,4,4,4,\n");
  CHECK(parsed.responses.size() == 2);
  REQUIRE(parsed.issues.size() == 1);
  CHECK(parsed.issues[0].record == 2);
  CHECK(parsed.issues[0].field == "years");
}

TEST_CASE("parse_responses: header and row-shape errors") {
  {
    std::istringstream in("wrong,header\nE1,J1\n");
    const auto parsed = parse_responses(in, ResponseFormat::Csv);
    REQUIRE(parsed.issues.size() == 1);
    CHECK(parsed.issues[0].record == 0);
  }
  {
    const auto parsed = parse_csv("E1,J1,SUBEDITOR,7,4,4\n");
    REQUIRE(parsed.issues.size() == 1);
    CHECK(parsed.issues[0].message.find("fields") != std::string::npos);
  }
}

TEST_CASE("parse_responses: JSON mirrors the CSV fields") {
  const std::string doc = R"([
    {"editor_id": "E1", "journal_id": "J1", "role": "EDITOR_IN_CHIEF",
     "years": 12, "q1": 4, "q2": 4, "q3": "17%", "q4": 4, "q5": 4, "q6": 3,
     "strategies": ["BIBLIOGRAPHIC_DB", "OTHER:reviewer panel"]},
    {"editor_id": "E2", "journal_id": "J1", "role": "SUBEDITOR",
     "years": 3, "q1": 9, "q2": 1, "q3": 1, "q4": 1, "q5": 1, "q6": 1}
  ])";
  std::istringstream in(doc);
  const auto parsed = parse_responses(in, ResponseFormat::Json);
  REQUIRE(parsed.responses.size() == 1);
  CHECK(parsed.responses[0].answers[2] == 4);
  REQUIRE(parsed.responses[0].strategies.size() == 2);
  CHECK(parsed.responses[0].strategies[1].code == StrategyCode::Other);
  CHECK(parsed.responses[0].strategies[1].other_text == "reviewer panel");
  REQUIRE(parsed.issues.size() == 1);
  CHECK(parsed.issues[0].record == 2);
  CHECK(parsed.issues[0].field == "q1");
}

TEST_CASE("parse_prescored_table: full rows with reference columns") {
  std::istringstream in(
      "journal_id,wf1,wf2,wf3,wf4,wf5,wf6,exp_sum,exp_mean,exp_e1,exp_area,"
      "exp_e2\n"
      "A,4,3.4,3.8,3,3.4,2.4,20.0,3.33,83.25,28.5,68.51\n");
  const auto parsed = parse_prescored_table(in);
  REQUIRE(parsed.issues.empty());
  REQUIRE(parsed.entries.size() == 1);
  const PrescoredEntry& a = parsed.entries[0];
  REQUIRE(a.wf.has_value());
  CHECK((*a.wf)[1] == doctest::Approx(3.4));
  CHECK(a.expected.e2 == doctest::Approx(68.51));
  CHECK(a.expected.sum == doctest::Approx(20.0));
}

TEST_CASE("parse_prescored_table: error and warning paths") {
  {
    std::istringstream in(
        "journal_id,wf1,wf2,wf3,wf4,wf5,wf6\n"
        "A,4,4,4,4,4,5\n");
    const auto parsed = parse_prescored_table(in);
    CHECK(parsed.entries.empty());
    REQUIRE(parsed.issues.size() == 1);
    CHECK(parsed.issues[0].message.find("[1,4]") != std::string::npos);
  }
  {
    std::istringstream in(
        "journal_id,wf1,wf2,wf3,wf4,wf5,wf6\n"
        "A,4,4,4\n");
    const auto parsed = parse_prescored_table(in);
    CHECK(parsed.entries.empty());
    CHECK(parsed.issues.size() == 1);
  }
  {
    std::istringstream in("journal_id,wf1,wf2,wf3,wf4,wf5,wf6\n");
    const auto parsed = parse_prescored_table(in);
    CHECK(parsed.entries.empty());
    REQUIRE(parsed.issues.size() == 1);
    CHECK(parsed.issues[0].warning);
  }
  {
    // A row without weight factors must ship all five reference columns.
    std::istringstream in(
        "journal_id,wf1,wf2,wf3,wf4,wf5,wf6,exp_sum,exp_mean,exp_e1,"
        "exp_area,exp_e2\n"
        "A,,,,,,,,,70.75,,49.76\n");
    const auto parsed = parse_prescored_table(in);
    CHECK(parsed.entries.empty());
    REQUIRE(parsed.issues.size() == 1);
    CHECK(parsed.issues[0].message.find("exp_sum..exp_e2") !=
          std::string::npos);
  }
}

TEST_CASE("load_fixtures: bundled datasets have the documented shape") {
  const auto fixtures = load_fixtures();
  REQUIRE(fixtures.contains("wos"));
  REQUIRE(fixtures.contains("sci"));
  REQUIRE(fixtures.contains("jscs"));

  const Dataset& wos = fixtures.at("wos");
  REQUIRE(wos.prescored.size() == 11);
  CHECK(wos.prescored.front().subject_id == "A");
  CHECK(wos.prescored.back().subject_id == "K");
  for (const PrescoredEntry& entry : wos.prescored) {
    CHECK(entry.wf.has_value());
    CHECK(entry.expected.complete_e());
  }
  // Journal J reference area.
  CHECK(wos.prescored[9].subject_id == "J");
  CHECK(wos.prescored[9].expected.area == doctest::Approx(38.1));

  const Dataset& sci = fixtures.at("sci");
  REQUIRE(sci.prescored.size() == 13);
  CHECK(!sci.prescored.front().wf.has_value());
  CHECK(sci.prescored[0].expected.e2 == doctest::Approx(15.10));
  CHECK(sci.prescored[1].expected.e2 == doctest::Approx(77.08));

  const Dataset& jscs = fixtures.at("jscs");
  REQUIRE(jscs.prescored.size() == 14);
  std::vector<double> e1;
  for (const PrescoredEntry& entry : jscs.prescored) {
    REQUIRE(entry.expected.e1.has_value());
    e1.push_back(*entry.expected.e1);
  }
  CHECK(descriptive_stats(e1).mean == doctest::Approx(71.393).epsilon(1e-4));
}

TEST_CASE("round-trip: responses survive CSV and JSON serialization") {
  const auto parsed = parse_csv(
      "E1,J1,EDITOR_IN_CHIEF,12,4,3,2,1,4,3,PRIOR_REVIEWER;OTHER:panel\n"
      "E2,J2,SUBEDITOR,0,1,40%,2,raw:3,2,4,BIBLIOGRAPHIC_DB\n");
  REQUIRE(parsed.issues.empty());
  REQUIRE(parsed.responses.size() == 2);

  {
    std::istringstream in(write_responses_csv(parsed.responses));
    const auto reparsed = parse_responses(in, ResponseFormat::Csv);
    CHECK(reparsed.issues.empty());
    CHECK(reparsed.responses == parsed.responses);
  }
  {
    std::istringstream in(write_responses_json(parsed.responses));
    const auto reparsed = parse_responses(in, ResponseFormat::Json);
    CHECK(reparsed.issues.empty());
    CHECK(reparsed.responses == parsed.responses);
  }
}

TEST_CASE("round-trip: journals and pre-scored tables") {
  std::vector<JournalRecord> journals = {
      {"J1", "Alpha Letters", std::string("1111-2222"), IndexGroup::Wos, {}},
      {"J2", "Beta, Applied", std::nullopt, IndexGroup::Sci, {}}};
  {
    std::istringstream in(write_journals_csv(journals));
    const auto reparsed = parse_journals(in);
    CHECK(reparsed.issues.empty());
    CHECK(reparsed.journals == journals);
  }

  const auto fixtures = load_fixtures();
  for (const char* name : {"wos", "sci", "jscs"}) {
    const auto& entries = fixtures.at(name).prescored;
    std::istringstream in(write_prescored_csv(entries));
    const auto reparsed = parse_prescored_table(in);
    CHECK(reparsed.issues.empty());
    CHECK(reparsed.entries == entries);
  }
}
