#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "loclang/signature.hpp"

namespace loclang {

/// First-order term. MIN is a logical builtin denoting the <-least argument.
struct Term {
  enum class Kind { Variable, Constant, Apply, Min };

  Kind kind = Kind::Variable;
  std::string name;  // empty for Min
  std::vector<Term> args;

  static Term var(std::string name) { return {Kind::Variable, std::move(name), {}}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name), {}}; }
  static Term apply(std::string fn, std::vector<Term> args) { return {Kind::Apply, std::move(fn), std::move(args)}; }
  static Term min(std::vector<Term> args) { return {Kind::Min, {}, std::move(args)}; }

  friend bool operator==(const Term&, const Term&) = default;
};

/// Nesting depth of function applications; MIN does not count.
int complexity(const Term& t);

/// First-order formula. And/Or are n-ary (at least two children once built
/// through the helpers below); Implies has exactly two children; quantifiers
/// bind `name` over the single child.
struct Formula {
  enum class Kind { True, False, Equal, Relation, Not, And, Or, Implies, Forall, Exists };

  Kind kind = Kind::True;
  std::string name;         // relation symbol or bound variable
  std::vector<Term> terms;  // atom arguments
  std::vector<Formula> children;

  bool is_atom() const { return kind == Kind::Equal || kind == Kind::Relation; }
  bool is_quantifier() const { return kind == Kind::Forall || kind == Kind::Exists; }

  friend bool operator==(const Formula&, const Formula&) = default;
};

// Builders. conj/disj collapse empty and singleton lists.
Formula f_true();
Formula f_false();
Formula eq(Term a, Term b);
Formula rel(std::string name, std::vector<Term> args);
Formula lt(Term a, Term b);
/// a < b | a = b
Formula le(Term a, Term b);
Formula neg(Formula f);
Formula conj(std::vector<Formula> parts);
Formula disj(std::vector<Formula> parts);
Formula implies(Formula a, Formula b);
/// (a -> b) & (b -> a)
Formula iff(Formula a, Formula b);
Formula forall(const std::vector<std::string>& vars, Formula body);
Formula exists(const std::vector<std::string>& vars, Formula body);

/// x1...xn of the guard below all satisfy `predicate` (or its negation when
/// `negated`); returns (guard(x1) & ... & guard(xn)) -> body.
Formula relativize(const std::vector<std::string>& vars, const std::string& predicate, bool negated, Formula body);

/// Variable names x1..xn rendered with the given stem.
std::vector<std::string> numbered_vars(const std::string& stem, int count);
std::vector<Term> var_terms(const std::vector<std::string>& names);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> variables(const Term& t);
/// All variable names, free or bound.
std::set<std::string> all_variable_names(const Formula& f);
bool is_sentence(const Formula& f);
bool is_quantifier_free(const Formula& f);
/// True iff some term inside uses MIN.
bool uses_min(const Formula& f);

/// Rename non-logical symbols; names not in the map are kept.
Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& renaming);
Term rename_symbols(const Term& t, const std::map<std::string, std::string>& renaming);

/// Renames free occurrences of variables. Targets must be fresh for `f`.
Formula rename_free_variables(const Formula& f, const std::map<std::string, std::string>& renaming);

/// Replace every constant `name` with `replacement` (a term).
Formula replace_constant(const Formula& f, const std::string& name, const Term& replacement);

/// Applies `fn` to every formula node in pre-order.
void visit_formulas(const Formula& f, const std::function<void(const Formula&)>& fn);
void visit_terms(const Formula& f, const std::function<void(const Term&)>& fn);

/// Universal sentence in prenex form: forall prefix . matrix, matrix
/// quantifier-free with free variables contained in the prefix.
struct UniversalSentence {
  std::vector<std::string> prefix;
  Formula matrix;

  /// The equivalent Sentence (nested Forall nodes).
  Formula as_formula() const;
  /// Top-level conjuncts of the matrix (the matrix itself when not an And).
  std::vector<Formula> conjuncts() const;

  friend bool operator==(const UniversalSentence&, const UniversalSentence&) = default;
};

/// Makes a name not present in `used` from `base` (base, base_2, base_3, ...)
/// and inserts it into `used`.
std::string fresh_name(const std::string& base, std::set<std::string>& used);

}  // namespace loclang
