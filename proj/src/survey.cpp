#include "peereff/survey.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace peereff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

QuestionOption opt(int wf, std::string label) {
  return QuestionOption{wf, std::move(label), std::nullopt};
}

QuestionOption opt(int wf, std::string label, NumericBucket bucket) {
  return QuestionOption{wf, std::move(label), bucket};
}

}  // namespace

bool NumericBucket::contains(double v) const {
  const bool above = lo_incl ? v >= lo : v > lo;
  const bool below = hi_incl ? v <= hi : v < hi;
  return above && below;
}

std::string to_string(StrategyCode code) {
  switch (code) {
    case StrategyCode::PriorReviewer: return "PRIOR_REVIEWER";
    case StrategyCode::PriorAuthor: return "PRIOR_AUTHOR";
    case StrategyCode::PersonalContact: return "PERSONAL_CONTACT";
    case StrategyCode::BibliographicDb: return "BIBLIOGRAPHIC_DB";
    case StrategyCode::SelfReview: return "SELF_REVIEW";
    case StrategyCode::Other: return "OTHER";
  }
  return "OTHER";
}

std::optional<StrategyCode> strategy_code_from_string(std::string_view text) {
  if (text == "PRIOR_REVIEWER") return StrategyCode::PriorReviewer;
  if (text == "PRIOR_AUTHOR") return StrategyCode::PriorAuthor;
  if (text == "PERSONAL_CONTACT") return StrategyCode::PersonalContact;
  if (text == "BIBLIOGRAPHIC_DB") return StrategyCode::BibliographicDb;
  if (text == "SELF_REVIEW") return StrategyCode::SelfReview;
  if (text == "OTHER") return StrategyCode::Other;
  return std::nullopt;
}

std::vector<std::string> all_strategy_codes() {
  return {"PRIOR_REVIEWER", "PRIOR_AUTHOR",  "PERSONAL_CONTACT",
          "BIBLIOGRAPHIC_DB", "SELF_REVIEW", "OTHER"};
}

std::string to_string(EditorRole role) {
  return role == EditorRole::EditorInChief ? "EDITOR_IN_CHIEF" : "SUBEDITOR";
}

std::optional<EditorRole> role_from_string(std::string_view text) {
  if (text == "EDITOR_IN_CHIEF") return EditorRole::EditorInChief;
  if (text == "SUBEDITOR") return EditorRole::Subeditor;
  return std::nullopt;
}

std::string to_string(IndexGroup group) {
  return group == IndexGroup::Wos ? "WOS" : "SCI";
}

std::optional<IndexGroup> index_group_from_string(std::string_view text) {
  if (text == "WOS") return IndexGroup::Wos;
  if (text == "SCI") return IndexGroup::Sci;
  return std::nullopt;
}

WfVector::WfVector() : values_{1.0, 1.0, 1.0, 1.0, 1.0, 1.0} {}

WfVector::WfVector(const std::array<double, 6>& values) : values_(values) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v >= 1.0 && v <= 4.0)) {
      throw std::invalid_argument("weight factor " + std::to_string(i + 1) +
                                  " out of [1,4]: " + std::to_string(v));
    }
  }
}

double WfVector::sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

double WfVector::mean() const { return sum() / 6.0; }

const QuestionnaireSchema& QuestionnaireSchema::standard() {
  static const QuestionnaireSchema schema = [] {
    QuestionnaireSchema s;
    s.version_ = "editor-survey-v1";

    // Raw-number buckets preserve the option labels while making the map
    // total over real-valued input (gaps between printed labels are split
    // at the midpoint of the gap).
    s.questions_[0] = ScoredQuestion{
        1,
        "How many reviewers do you invite in the first round?",
        AnswerKind::Count,
        {opt(1, ">4", {5.0, kInf, true, false}),
         opt(2, "4", {4.0, 5.0, true, false}),
         opt(3, "3", {3.0, 4.0, true, false}),
         opt(4, "1-2", {1.0, 3.0, true, false})},
        1.0,
        kInf};
    s.questions_[1] = ScoredQuestion{
        2,
        "What is the portion of manuscripts for which a second round of "
        "reviewer invitation is needed?",
        AnswerKind::Percentage,
        {opt(1, ">60%", {60.0, 100.0, false, true}),
         opt(2, "41-60%", {40.0, 60.0, false, true}),
         opt(3, "25-40%", {25.0, 40.0, true, true}),
         opt(4, "<25%", {0.0, 25.0, true, false})},
        0.0,
        100.0};
    s.questions_[2] = ScoredQuestion{
        3,
        "What is the portion of invitations to reviewers without response?",
        AnswerKind::Percentage,
        {opt(1, ">60%", {60.0, 100.0, false, true}),
         opt(2, "41-60%", {40.0, 60.0, false, true}),
         opt(3, "25-40%", {25.0, 40.0, true, true}),
         opt(4, "<25%", {0.0, 25.0, true, false})},
        0.0,
        100.0};
    s.questions_[3] = ScoredQuestion{
        4,
        "What is the portion of inadequate reports?",
        AnswerKind::Percentage,
        {opt(1, ">10%", {10.0, 100.0, false, true}),
         opt(2, "6-9%", {5.5, 10.0, true, true}),
         opt(3, "3-5%", {2.5, 5.5, true, false}),
         opt(4, "1-2%", {0.0, 2.5, true, false})},
        0.0,
        100.0};
    s.questions_[4] = ScoredQuestion{
        5,
        "How do you estimate the quality of reports?",
        AnswerKind::Categorical,
        {opt(1, "Predominantly poor"),
         opt(2, "Equivalent number of good and poor"),
         opt(3, "Predominantly good"),
         opt(4, "Good")},
        0.0,
        0.0};
    s.questions_[5] = ScoredQuestion{
        6,
        "How do you estimate the timeliness of report submission?",
        AnswerKind::Categorical,
        {opt(1, ">10 days after deadline"),
         opt(2, "<10 days after deadline"),
         opt(3, "On time"),
         opt(4, "Before deadline")},
        0.0,
        0.0};

    s.strategy_labels_ = {
        "I invite a colleague who was already a reviewer for this journal",
        "I invite a colleague who was an author of article in this journal",
        "I invite a colleague whom I know personally",
        "I use bibliographic databases (WoS, SCOPUS, Google Scholar, PubMed)",
        "I review manuscripts frequently by myself",
        "Other"};
    return s;
  }();
  return schema;
}

const ScoredQuestion& QuestionnaireSchema::question(int index) const {
  if (index < 1 || index > 6) {
    throw std::out_of_range("question index out of 1..6: " +
                            std::to_string(index));
  }
  return questions_[static_cast<std::size_t>(index - 1)];
}

int map_choice_to_wf(const ScoredQuestion& question, int option_index) {
  if (option_index < 1 || option_index > 4) {
    throw std::invalid_argument(
        "question " + std::to_string(question.index) +
        ": option index out of 1..4: " + std::to_string(option_index));
  }
  return question.options[static_cast<std::size_t>(option_index - 1)].wf_level;
}

int bucket_numeric_answer(const ScoredQuestion& question, double value) {
  if (question.kind == AnswerKind::Categorical) {
    throw std::logic_error("question " + std::to_string(question.index) +
                           " accepts categorical answers only");
  }
  if (!std::isfinite(value) || value < question.valid_min ||
      value > question.valid_max) {
    throw std::invalid_argument(
        "question " + std::to_string(question.index) + ": value " +
        std::to_string(value) + " outside valid range");
  }
  for (const QuestionOption& option : question.options) {
    if (option.bucket && option.bucket->contains(value)) {
      return option.wf_level;
    }
  }
  // Unreachable for a well-formed schema: buckets cover the valid range.
  throw std::logic_error("question " + std::to_string(question.index) +
                         ": no bucket for value " + std::to_string(value));
}

std::vector<ValidationIssue> validate_response(
    const EditorResponse& response, const QuestionnaireSchema& schema,
    const std::set<std::string>& known_journals) {
  std::vector<ValidationIssue> issues;
  const std::string who =
      response.editor_id.empty() ? "<unnamed editor>" : response.editor_id;

  if (response.editor_id.empty()) {
    issues.push_back({who, "missing editor_id"});
  }
  if (!known_journals.contains(response.journal_id)) {
    issues.push_back({who + "/journal_id",
                      "unknown journal \"" + response.journal_id + "\""});
  }
  if (response.years_as_editor < 0) {
    issues.push_back({who + "/years",
                      "years as editor must be non-negative, got " +
                          std::to_string(response.years_as_editor)});
  }
  for (int q = 1; q <= 6; ++q) {
    const auto& answer = response.answers[static_cast<std::size_t>(q - 1)];
    const std::string path = who + "/q" + std::to_string(q);
    if (!answer.has_value()) {
      issues.push_back({path, "missing answer to question " +
                                  std::to_string(q)});
      continue;
    }
    if (*answer < 1 || *answer > 4) {
      issues.push_back({path, "option index out of 1..4: " +
                                  std::to_string(*answer)});
      continue;
    }
    // Resolvability double-check against the schema mapping.
    map_choice_to_wf(schema.question(q), *answer);
  }
  for (const SearchStrategy& strategy : response.strategies) {
    if (strategy.code != StrategyCode::Other && !strategy.other_text.empty()) {
      issues.push_back({who + "/strategies",
                        "free text is only allowed on the OTHER strategy"});
    }
  }
  return issues;
}

}  // namespace peereff
