#pragma once

#include "loclang/signature.hpp"
#include "loclang/syntax.hpp"

namespace loclang {

/// Non-logical symbols occurring in `f` with inferred arities. "<" is included
/// when min(...) occurs. Throws ArityConflictError on inconsistent use.
Signature signature_of(const Formula& f);
Signature signature_of(const UniversalSentence& u);

/// Negation normal form: negations only on atoms, no implications.
Formula to_nnf(const Formula& f);

/// Pulls the quantifiers of a sentence to the front. Universal quantifiers in
/// positive position and existential ones in negative position are admitted;
/// any other quantifier raises NotUniversalError. Bound variables shared by
/// the two sides of a positive conjunction are merged, everything else is
/// renamed apart. Quantifier-free subformulas are kept verbatim.
UniversalSentence to_universal_prenex(const Formula& sentence);

}  // namespace loclang
