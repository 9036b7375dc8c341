#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "loclang/local_sentence.hpp"
#include "loclang/structure.hpp"

namespace loclang {

/// Names accepted by example_sentence, in a fixed order.
std::vector<std::string> example_names();

/// DSL text (.lfs format) of a named example.
std::string example_text(std::string_view name);

/// Named sentences shipped with the library:
///   sigma_word     finite prefixes of abab²ab³… ending in a (bound 2)
///   remark_psi     remark_psi(true) over {0,1,2}: 0*1*2+
///   all_words      true over {a,b}
///   no_words       false over {a,b}
///   a_before_b     a*b*
///   anbn           a^n b^n via a bijection between the a's and the b's
///   ends_with_a    (a|b)*a through a greatest constant
///   starts_with_b  b(a|b)* through a least constant
///   single_a       words with exactly one a
///   even_a         words with an even number of a's (fixed-point-free involution)
/// Throws InvalidArgument for an unknown name.
LocalSentence example_sentence(std::string_view name);

/// φ ∧ (0s before 1s) ∧ (1s before 2s) ∧ (0s before 2s) ∧ P_2(c) for a fresh
/// constant c. φ must be over the alphabet {0,1,2}.
LocalSentence remark_psi(const LocalSentence& phi);

/// Sentence whose language is exactly `words` (all nonempty). Positions are
/// named by constants e1..em, m the longest length.
LocalSentence word_set_sentence(const std::vector<Word>& words, const Alphabet& alphabet, std::string name = {});

/// φ ∧ ∀x x ≤ c for a fresh constant c: every model has a greatest element.
/// The bound grows by one.
LocalSentence with_greatest_element(const LocalSentence& phi);

}  // namespace loclang
