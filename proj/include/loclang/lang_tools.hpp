#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loclang/structure.hpp"

namespace loclang {

/// One parenthesis: y1, y2 (open) or their bars Y1, Y2 (close).
struct Paren {
  int sort = 1;  // 1 or 2
  bool close = false;

  friend bool operator==(const Paren&, const Paren&) = default;
};

using ParenWord = std::vector<Paren>;

/// Tokens y1 y2 Y1 Y2, with or without separating spaces; "λ" or "" is empty.
/// Throws LetterError on anything else.
ParenWord parse_paren_word(std::string_view text);
/// Space separated tokens; "λ" for the empty word.
std::string render_paren_word(const ParenWord& w);

/// y·v1·ȳ·v2 → v1·v2 when v1 holds open parentheses only. The redex is anchored
/// at the start of the word, so at most one step applies.
std::optional<ParenWord> antidyck_reduce_step(const ParenWord& w);

/// Iterated reduction reaches λ.
bool antidyck_member(const ParenWord& w);

/// Queue discipline: opens are enqueued, a close must match the front.
bool fifo_member(const ParenWord& w);

/// All 4^n words of length n, in lexicographic order y1 < y2 < Y1 < Y2.
std::vector<ParenWord> all_paren_words(int n);

/// Letter i (0-based) of σ = a b a b² a b³ …
char sigma_letter(std::size_t i);
/// First n letters of σ.
Word sigma_prefix(std::size_t n);

/// Least i < horizon with (u·v^ω)(i) != σ(i). Throws InvalidArgument when v is
/// empty or horizon < |u|.
std::optional<std::size_t> ultimately_periodic_divergence(const Word& u, const Word& v, std::size_t horizon);

}  // namespace loclang
