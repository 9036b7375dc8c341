#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loclang/signature.hpp"
#include "loclang/syntax.hpp"

namespace loclang {

/// A sentence file: optional header lines followed by the sentence body.
///
///   name: sigma_word
///   alphabet: a b
///   bound: 2            (or "unknown")
///   constants: c
///   functions: f/2 p/1
///   relations: P_a/1 P_b/1 </2
///
/// Any of constants/functions/relations makes the signature declared; the
/// body may then only use declared symbols.
struct SentenceDocument {
  std::string name;
  std::optional<std::vector<std::string>> alphabet;
  std::optional<int> bound;
  std::optional<Signature> declared;
  Formula body;
};

/// Parses a sentence, accepting (and enforcing) the header lines above.
/// Throws SyntaxError, UnknownSymbolError, ArityConflictError.
Formula parse_sentence(std::string_view text);
SentenceDocument parse_document(std::string_view text);

/// Canonical text; parse_sentence(render_sentence(f)) == f for every sentence
/// whose bound variables do not shadow constant names.
std::string render_sentence(const Formula& f);
std::string render_term(const Term& t);
std::string render_document(const SentenceDocument& doc);

bool is_keyword(std::string_view word);

}  // namespace loclang
