#pragma once

// Questionnaire schema, answer-to-weight-factor mapping and the survey-side
// domain types. Six scored questions carry four options each, ordered by
// weight factor (WF) level 1..4; WF 4 marks the most efficient outcome.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace peereff {

enum class AnswerKind { Categorical, Count, Percentage };

// Half-open-ish interval used to bucket raw numeric answers. Bounds may be
// individually inclusive; hi may be +infinity.
struct NumericBucket {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_incl = true;
  bool hi_incl = false;

  bool contains(double v) const;
};

struct QuestionOption {
  int wf_level = 0;  // 1..4
  std::string label;
  std::optional<NumericBucket> bucket;  // numeric question kinds only
};

struct ScoredQuestion {
  int index = 0;  // 1..6, fixed question order
  std::string prompt;
  AnswerKind kind = AnswerKind::Categorical;
  std::array<QuestionOption, 4> options;  // stored in WF order 1..4
  double valid_min = 0.0;  // numeric kinds: accepted raw-value range
  double valid_max = 0.0;
};

enum class StrategyCode {
  PriorReviewer,
  PriorAuthor,
  PersonalContact,
  BibliographicDb,
  SelfReview,
  Other,
};

std::string to_string(StrategyCode code);
std::optional<StrategyCode> strategy_code_from_string(std::string_view text);
std::vector<std::string> all_strategy_codes();

struct SearchStrategy {
  StrategyCode code = StrategyCode::Other;
  std::string other_text;  // meaningful only when code == Other

  auto operator<=>(const SearchStrategy&) const = default;
};

enum class EditorRole { EditorInChief, Subeditor };

std::string to_string(EditorRole role);
std::optional<EditorRole> role_from_string(std::string_view text);

enum class IndexGroup { Wos, Sci };

std::string to_string(IndexGroup group);
std::optional<IndexGroup> index_group_from_string(std::string_view text);

// One editor's survey answers. Scored answers are stored canonically as
// option_index in WF order (1 = least efficient .. 4 = most efficient);
// raw numeric answers are converted to an option index at load time.
struct EditorResponse {
  std::string editor_id;
  std::string journal_id;
  EditorRole role = EditorRole::EditorInChief;
  int years_as_editor = 0;
  std::array<std::optional<int>, 6> answers;
  std::vector<SearchStrategy> strategies;  // kept sorted and unique

  bool operator==(const EditorResponse&) const = default;
};

struct JournalRecord {
  std::string journal_id;
  std::string name;
  std::optional<std::string> issn;
  IndexGroup index_group = IndexGroup::Wos;
  std::vector<std::string> editors;

  bool operator==(const JournalRecord&) const = default;
};

// Six weight factors in [1,4], ordered by question index. Components are
// integer-valued when derived from a single response and may be fractional
// only after aggregation.
class WfVector {
 public:
  WfVector();  // all components at the scale floor (1.0)
  explicit WfVector(const std::array<double, 6>& values);  // validates [1,4]

  double operator[](std::size_t i) const { return values_[i]; }
  const std::array<double, 6>& values() const { return values_; }
  double sum() const;
  double mean() const;

  bool operator==(const WfVector&) const = default;

 private:
  std::array<double, 6> values_;
};

class QuestionnaireSchema {
 public:
  // The fixed six-question schema plus the six reviewer-search strategies.
  static const QuestionnaireSchema& standard();

  const ScoredQuestion& question(int index) const;  // index 1..6
  const std::array<ScoredQuestion, 6>& scored_questions() const {
    return questions_;
  }
  const std::array<std::string, 6>& strategy_labels() const {
    return strategy_labels_;
  }
  const std::string& version() const { return version_; }

 private:
  QuestionnaireSchema() = default;

  std::array<ScoredQuestion, 6> questions_;
  std::array<std::string, 6> strategy_labels_;
  std::string version_;
};

// Maps a chosen option (1..4, WF order) to its weight factor level.
// Throws std::invalid_argument naming the question for an out-of-range index.
int map_choice_to_wf(const ScoredQuestion& question, int option_index);

// Buckets a raw numeric answer into a WF level under the declared interval
// policy. Throws std::logic_error for categorical questions and
// std::invalid_argument for values outside the question's valid range.
int bucket_numeric_answer(const ScoredQuestion& question, double value);

struct ValidationIssue {
  std::string path;     // e.g. "editor E7/q5"
  std::string message;

  bool operator==(const ValidationIssue&) const = default;
};

// Structural validation of a response against the schema and a set of known
// journal ids. Issues are data, not failures: the list is empty iff the
// response is fully usable for scoring.
std::vector<ValidationIssue> validate_response(
    const EditorResponse& response, const QuestionnaireSchema& schema,
    const std::set<std::string>& known_journals);

}  // namespace peereff
