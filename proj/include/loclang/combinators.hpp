#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loclang/local_sentence.hpp"
#include "loclang/structure.hpp"

namespace loclang {

/// Letter-to-letter-or-λ map h: Σ → Γ ∪ {λ}.
struct AlphabeticMorphism {
  Alphabet source;
  Alphabet target;
  /// Image of every source letter; nullopt stands for λ.
  std::map<std::string, std::optional<std::string>> images;

  /// Throws InvalidArgument if a source letter is unmapped or an image is
  /// outside the target alphabet.
  void check() const;
  bool is_erasing() const;
  bool is_non_erasing() const { return !is_erasing(); }
  /// h(c) = c on some A ⊆ Σ and λ elsewhere.
  bool is_canonical_erasing() const;
  /// Letters sent to λ (Σ').
  std::vector<std::string> erased() const;
  std::vector<std::string> preimage(const std::string& c) const;
  Word apply(const Word& w) const;
};

/// Reads "a -> c" lines; "a ->", "a -> λ" and "a -> -" erase a. When the
/// alphabets are omitted they are collected from the lines in order of
/// appearance. Blank lines and '#' comments are ignored.
AlphabeticMorphism parse_morphism(std::string_view text, Alphabet source = {}, Alphabet target = {});

/// λ-free substitution a_i ↦ L(φ_i), all φ_i over one target alphabet.
struct SubstitutionSpec {
  Alphabet source;
  Alphabet target;
  std::map<std::string, LocalSentence> images;

  void check() const;
};

/// Reads "a -> bc | b" lines into finite word sets (word_set_sentence);
/// "a -> @file.lfs" loads the image sentence from a file (relative to
/// `base_dir`). Alphabets are collected as in parse_morphism when omitted.
SubstitutionSpec parse_substitution(std::string_view text, Alphabet source = {}, Alphabet target = {},
                                    const std::string& base_dir = ".");

/// Returns (φ1, φ2') where φ2' is φ2 with every symbol outside `keep` that also
/// occurs in φ1 (as a symbol or variable) renamed to a fresh name.
std::pair<LocalSentence, LocalSentence> rename_apart(const LocalSentence& phi1, const LocalSentence& phi2,
                                                     const Signature& keep);

/// (φ1 ∧ g = min for every function g of φ2') ∨ (φ2' ∧ g = min for every
/// function g of φ1). The empty word is lost when the result has constants.
LocalSentence union_sentence(const LocalSentence& phi1, const LocalSentence& phi2);

/// L(φ)·L(ψ) through a unary predicate P marking the φ-part as an initial
/// segment. With the guard, φ is first replaced by with_greatest_element(φ),
/// which removes λ from its language.
LocalSentence concat_sentence(const LocalSentence& phi, const LocalSentence& psi,
                              bool add_greatest_element_guard = false);

/// f(L(φ)) for the λ-free substitution f given by `spec`. Throws
/// InvalidArgument when some image language accepts λ.
LocalSentence substitution_sentence(const LocalSentence& phi, const SubstitutionSpec& spec,
                                    long long budget = 10'000'000);

/// h(L(φ)) for a non-erasing h. With a marker letter, φ is over Σ ∪ {marker}
/// and the marker is mapped to itself. Throws InvalidArgument for an erasing h.
LocalSentence morphism_sentence(const LocalSentence& phi, const AlphabeticMorphism& h,
                                std::optional<std::string> marker = std::nullopt);

/// For φ over Γ ∪ {marker}: the finitary language
/// { w·marker^k : k ≥ 1, w ∈ Σ*, h(w)·marker^k ∈ L(φ) } over Σ ∪ {marker}.
LocalSentence inverse_morphism_sentence(const LocalSentence& phi, const AlphabeticMorphism& h,
                                        const std::string& marker);

/// Matrix building blocks shared by the constructions.
Formula linear_order_axiom();
/// The unary predicates partition the universe.
Formula partition_axiom(const std::vector<std::string>& predicates);

}  // namespace loclang
