#pragma once

#include <map>
#include <string>

#include "loclang/compiled.hpp"
#include "loclang/structure.hpp"
#include "loclang/syntax.hpp"

namespace loclang {

using Assignment = std::map<std::string, int>;

struct SatisfactionResult {
  bool holds = true;
  /// Prefix variables of a falsified instance (empty when holds).
  Assignment counterexample;

  explicit operator bool() const noexcept { return holds; }
};

/// Denotation of `t`; min(...) is the <-least argument. Throws
/// UnknownSymbolError when the structure lacks a symbol and InvalidArgument
/// when `env` misses a variable.
int eval_term(const FiniteStructure& m, const Term& t, const Assignment& env);

/// Tarski truth of an arbitrary formula under `env`.
bool eval_formula(const FiniteStructure& m, const Formula& f, Assignment env = {});

/// M ⊨ ∀prefix matrix, with a falsifying assignment on failure.
SatisfactionResult satisfies(const FiniteStructure& m, const UniversalSentence& u);

/// A universal sentence prepared for repeated evaluation on structures over
/// one signature (any universe size).
class CompiledSentence {
 public:
  CompiledSentence(const UniversalSentence& u);

  SatisfactionResult check(const FiniteStructure& m) const;
  const UniversalSentence& sentence() const noexcept { return sentence_; }
  const ScopeNode& scope() const noexcept { return scope_; }

 private:
  UniversalSentence sentence_;
  ScopeNode scope_;
};

}  // namespace loclang
