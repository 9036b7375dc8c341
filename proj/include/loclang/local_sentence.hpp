#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loclang/dsl.hpp"
#include "loclang/signature.hpp"
#include "loclang/syntax.hpp"

namespace loclang {

/// Ordered list of distinct letters. Letter `a` is read through the unary
/// predicate P_a.
using Alphabet = std::vector<std::string>;

std::string letter_predicate(std::string_view letter);

/// Λ_Σ: "<" followed by P_a for each letter, in alphabet order.
Signature word_signature(const Alphabet& alphabet);

/// Throws LetterError on duplicate or unusable letters.
void check_alphabet(const Alphabet& alphabet);

struct LocalSentence {
  std::string name;
  UniversalSentence body;
  Alphabet alphabet;
  std::optional<int> declared_bound;
  /// signature_of(body) together with any explicitly declared symbols.
  Signature signature;

  /// Symbols outside the word signature: what an expansion has to interpret.
  Signature expansion_signature() const;
  bool has_constants() const { return !signature.constants().empty(); }
};

/// Builds a local sentence; `extra` symbols are added to the signature.
/// The body is normalized with to_universal_prenex.
LocalSentence make_local(const Formula& sentence, Alphabet alphabet, std::optional<int> bound,
                         std::string name = {}, const Signature& extra = {});
LocalSentence make_local(UniversalSentence body, Alphabet alphabet, std::optional<int> bound,
                         std::string name = {}, const Signature& extra = {});

/// From .lfs text; the alphabet header is required and contributes Λ_Σ to the
/// signature.
LocalSentence parse_local_sentence(std::string_view text);
LocalSentence load_local_sentence(const std::string& path);

SentenceDocument to_document(const LocalSentence& ls);
std::string render_local_sentence(const LocalSentence& ls);
void save_local_sentence(const LocalSentence& ls, const std::string& path);

/// Empty iff the signature contains Λ_Σ and the sentence is well formed.
std::vector<std::string> validate(const LocalSentence& ls);

}  // namespace loclang
