#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loclang/local_sentence.hpp"
#include "loclang/structure.hpp"

namespace loclang {

inline constexpr long long kDefaultBudget = 10'000'000;

struct SearchOptions {
  /// Maximum number of search nodes (value choices) per membership call.
  long long budget = kDefaultBudget;
  /// When set, values are tried in a seeded random order and unconstrained
  /// cells get random values, which yields varied witnesses.
  std::optional<std::uint64_t> shuffle_seed;
  /// Limit on the number of alternatives produced by splitting the matrix
  /// along variable-disjoint disjunctions.
  std::size_t max_cases = 256;
};

enum class MembershipStatus { Accepted, Rejected, BudgetExhausted };

std::string_view to_string(MembershipStatus status);

struct MembershipResult {
  bool accepted = false;
  /// Present iff accepted: an expansion of the word structure satisfying the body.
  std::optional<FiniteStructure> witness;
  long long nodes_explored = 0;
  /// The search ran to completion (always true when accepted).
  bool exhausted = false;

  MembershipStatus status() const noexcept {
    if (accepted) return MembershipStatus::Accepted;
    return exhausted ? MembershipStatus::Rejected : MembershipStatus::BudgetExhausted;
  }
};

/// Searches for an expansion of word_to_structure(w) over ls.signature that
/// satisfies ls.body. Throws InvalidArgument if validate(ls) is not clean and
/// AlphabetMismatchError for letters outside ls.alphabet.
MembershipResult decide_membership(const Word& w, const LocalSentence& ls, long long budget = kDefaultBudget);
MembershipResult decide_membership(const Word& w, const LocalSentence& ls, const SearchOptions& options);

/// All words over `alphabet` of length at most max_len, length-lexicographic.
std::vector<Word> all_words(const Alphabet& alphabet, int max_len);

struct Enumeration {
  std::vector<Word> words;
  /// Words whose membership call ran out of budget.
  std::vector<Word> undecided;
  long long nodes_explored = 0;
  bool complete() const noexcept { return undecided.empty(); }
};

/// Accepted words of length <= max_len in length-lexicographic order.
Enumeration enumerate_language(const LocalSentence& ls, int max_len, long long budget = kDefaultBudget);

struct LanguageComparison {
  bool equal = true;
  /// Length-lexicographically least word in exactly one language.
  std::optional<Word> counterexample;
  /// Both enumerations completed within budget.
  bool complete = true;
};

/// Compares the two languages up to max_len; the alphabets must agree as sets.
LanguageComparison language_equal_upto(const LocalSentence& a, const LocalSentence& b, int max_len,
                                       long long budget = kDefaultBudget);

}  // namespace loclang
