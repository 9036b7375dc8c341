#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "loclang/local_sentence.hpp"
#include "loclang/search.hpp"
#include "loclang/structure.hpp"

namespace loclang {

enum class Construction { Union, Concat, Substitution, Morphism, InverseMorphism };

std::string_view to_string(Construction c);
/// "union", "concat", "substitution", "morphism", "inverse_morphism".
std::optional<Construction> parse_construction(std::string_view tag);

/// Closure-step bound of a construction output from the bounds of its inputs:
///   union             max(n1, n2)
///   concat            max(n_φ, n_ψ)
///   substitution      1 + n_φ + max_i n_φi   (bounds = {n_φ, n_φ1, ...})
///   morphism          n_φ
///   inverse_morphism  n_φ + 1
/// Throws InvalidArgument on a wrong number of bounds or an unknown tag.
int declared_bound_for(Construction c, const std::vector<int>& bounds);
int declared_bound_for(std::string_view tag, const std::vector<int>& bounds);

enum class Verdict { Consistent, Falsified, Inconclusive };
enum class ViolationKind { SubstructureNotModel, StepsExceeded };

std::string_view to_string(Verdict v);
std::string_view to_string(ViolationKind k);

struct Violation {
  Word word;
  FiniteStructure model;
  std::vector<int> subset;
  ViolationKind kind = ViolationKind::StepsExceeded;
  int steps = 0;
};

struct AuditOptions {
  int max_size = 7;
  long long budget = kDefaultBudget;
  std::uint64_t seed = 0;
  /// Shuffled witnesses searched per accepted word, on top of the first one.
  int extra_models_per_word = 2;
  /// Subsets drawn per model when exhaustion is too expensive.
  int sampled_subsets = 1000;
  std::size_t max_reported_violations = 20;
};

struct AuditReport {
  std::string sentence;
  std::string kind;  // "closure_bound" or "substructure"
  long long models_checked = 0;
  long long subsets_checked = 0;
  int max_steps_observed = 0;
  std::optional<int> declared_bound;
  long long violation_count = 0;
  std::vector<Violation> violations;  // at most max_reported_violations
  std::vector<Word> undecided;        // membership calls that hit the budget
  Verdict verdict = Verdict::Inconclusive;

  static constexpr std::string_view kNote =
      "consistent means that no counterexample was found among the models checked; it is not a proof";

  nlohmann::ordered_json to_json() const;
  std::string summary() const;
};

/// Closure step counts over every subset (exhaustive when 2^n <= sampled_subsets,
/// sampled otherwise) of models found by expansion search on all words up to
/// max_size. Falsified when a count exceeds the declared bound; inconclusive
/// when some membership search ran out of budget.
AuditReport audit_closure_bound(const LocalSentence& ls, const AuditOptions& options = {});
AuditReport audit_closure_bound(const LocalSentence& ls, int max_size, long long budget);

/// Checks that the substructure generated by each subset is again a model.
AuditReport audit_substructure_closure(const LocalSentence& ls, const AuditOptions& options = {});
AuditReport audit_substructure_closure(const LocalSentence& ls, int max_size, long long budget);

struct LocalityAudit {
  AuditReport closure_bound;
  AuditReport substructure;
};

/// Both audits over one shared set of models.
LocalityAudit audit_locality(const LocalSentence& ls, const AuditOptions& options = {});

}  // namespace loclang
