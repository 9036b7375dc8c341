#include "loclang/syntax.hpp"

#include <algorithm>

#include "loclang/error.hpp"

namespace loclang {

int complexity(const Term& t) {
  int inner = 0;
  for (const auto& a : t.args) inner = std::max(inner, complexity(a));
  return t.kind == Term::Kind::Apply ? inner + 1 : inner;
}

Formula f_true() { return {Formula::Kind::True, {}, {}, {}}; }
Formula f_false() { return {Formula::Kind::False, {}, {}, {}}; }

Formula eq(Term a, Term b) {
  Formula f{Formula::Kind::Equal, {}, {}, {}};
  f.terms.push_back(std::move(a));
  f.terms.push_back(std::move(b));
  return f;
}

Formula rel(std::string name, std::vector<Term> args) {
  return {Formula::Kind::Relation, std::move(name), std::move(args), {}};
}

Formula lt(Term a, Term b) { return rel(std::string(kOrderSymbol), {std::move(a), std::move(b)}); }

Formula le(Term a, Term b) {
  Formula strict = lt(a, b);
  return disj({std::move(strict), eq(std::move(a), std::move(b))});
}

Formula neg(Formula f) {
  Formula out{Formula::Kind::Not, {}, {}, {}};
  out.children.push_back(std::move(f));
  return out;
}

namespace {

Formula nary(Formula::Kind kind, std::vector<Formula> parts, Formula unit) {
  if (parts.empty()) return unit;
  if (parts.size() == 1) return std::move(parts.front());
  return {kind, {}, {}, std::move(parts)};
}

}  // namespace

Formula conj(std::vector<Formula> parts) { return nary(Formula::Kind::And, std::move(parts), f_true()); }
Formula disj(std::vector<Formula> parts) { return nary(Formula::Kind::Or, std::move(parts), f_false()); }

Formula implies(Formula a, Formula b) {
  Formula f{Formula::Kind::Implies, {}, {}, {}};
  f.children.push_back(std::move(a));
  f.children.push_back(std::move(b));
  return f;
}

Formula iff(Formula a, Formula b) {
  Formula ab = implies(a, b);
  Formula ba = implies(std::move(b), std::move(a));
  return conj({std::move(ab), std::move(ba)});
}

namespace {

Formula quantify(Formula::Kind kind, const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    Formula q{kind, *it, {}, {}};
    q.children.push_back(std::move(body));
    body = std::move(q);
  }
  return body;
}

}  // namespace

Formula forall(const std::vector<std::string>& vars, Formula body) {
  return quantify(Formula::Kind::Forall, vars, std::move(body));
}

Formula exists(const std::vector<std::string>& vars, Formula body) {
  return quantify(Formula::Kind::Exists, vars, std::move(body));
}

Formula relativize(const std::vector<std::string>& vars, const std::string& predicate, bool negated, Formula body) {
  if (vars.empty()) return body;
  std::vector<Formula> guard;
  for (const auto& v : vars) {
    Formula g = rel(predicate, {Term::var(v)});
    guard.push_back(negated ? neg(std::move(g)) : std::move(g));
  }
  return implies(conj(std::move(guard)), std::move(body));
}

std::vector<std::string> numbered_vars(const std::string& stem, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

std::vector<Term> var_terms(const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& n : names) out.push_back(Term::var(n));
  return out;
}

std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.kind == Term::Kind::Variable) out.insert(u.name);
    for (const auto& a : u.args) walk(a);
  };
  walk(t);
  return out;
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  for (const auto& t : f.terms)
    for (const auto& v : variables(t))
      if (!bound.count(v)) out.insert(v);
  if (f.is_quantifier()) {
    bool fresh = bound.insert(f.name).second;
    collect_free(f.children.front(), bound, out);
    if (fresh) bound.erase(f.name);
    return;
  }
  for (const auto& c : f.children) collect_free(c, bound, out);
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_variable_names(const Formula& f) {
  std::set<std::string> out;
  visit_formulas(f, [&](const Formula& g) {
    if (g.is_quantifier()) out.insert(g.name);
    for (const auto& t : g.terms)
      for (const auto& v : variables(t)) out.insert(v);
  });
  return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

bool is_quantifier_free(const Formula& f) {
  bool ok = true;
  visit_formulas(f, [&](const Formula& g) { ok = ok && !g.is_quantifier(); });
  return ok;
}

bool uses_min(const Formula& f) {
  bool found = false;
  visit_terms(f, [&](const Term& t) { found = found || t.kind == Term::Kind::Min; });
  return found;
}

Term rename_symbols(const Term& t, const std::map<std::string, std::string>& renaming) {
  Term out = t;
  if (t.kind == Term::Kind::Constant || t.kind == Term::Kind::Apply) {
    if (auto it = renaming.find(t.name); it != renaming.end()) out.name = it->second;
  }
  for (auto& a : out.args) a = rename_symbols(a, renaming);
  return out;
}

Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& renaming) {
  Formula out = f;
  if (f.kind == Formula::Kind::Relation) {
    if (auto it = renaming.find(f.name); it != renaming.end()) out.name = it->second;
  }
  for (auto& t : out.terms) t = rename_symbols(t, renaming);
  for (auto& c : out.children) c = rename_symbols(c, renaming);
  return out;
}

namespace {

Term rename_vars_in_term(const Term& t, const std::map<std::string, std::string>& renaming) {
  Term out = t;
  if (t.kind == Term::Kind::Variable) {
    if (auto it = renaming.find(t.name); it != renaming.end()) out.name = it->second;
  }
  for (auto& a : out.args) a = rename_vars_in_term(a, renaming);
  return out;
}

}  // namespace

Formula rename_free_variables(const Formula& f, const std::map<std::string, std::string>& renaming) {
  if (renaming.empty()) return f;
  Formula out = f;
  if (f.is_quantifier()) {
    if (renaming.count(f.name)) {
      auto inner = renaming;
      inner.erase(f.name);
      out.children.front() = rename_free_variables(f.children.front(), inner);
    } else {
      out.children.front() = rename_free_variables(f.children.front(), renaming);
    }
    return out;
  }
  for (auto& t : out.terms) t = rename_vars_in_term(t, renaming);
  for (auto& c : out.children) c = rename_free_variables(c, renaming);
  return out;
}

namespace {

Term replace_constant_term(const Term& t, const std::string& name, const Term& replacement) {
  if (t.kind == Term::Kind::Constant && t.name == name) return replacement;
  Term out = t;
  for (auto& a : out.args) a = replace_constant_term(a, name, replacement);
  return out;
}

}  // namespace

Formula replace_constant(const Formula& f, const std::string& name, const Term& replacement) {
  Formula out = f;
  for (auto& t : out.terms) t = replace_constant_term(t, name, replacement);
  for (auto& c : out.children) c = replace_constant(c, name, replacement);
  return out;
}

void visit_formulas(const Formula& f, const std::function<void(const Formula&)>& fn) {
  fn(f);
  for (const auto& c : f.children) visit_formulas(c, fn);
}

void visit_terms(const Formula& f, const std::function<void(const Term&)>& fn) {
  std::function<void(const Term&)> walk = [&](const Term& t) {
    fn(t);
    for (const auto& a : t.args) walk(a);
  };
  visit_formulas(f, [&](const Formula& g) {
    for (const auto& t : g.terms) walk(t);
  });
}

Formula UniversalSentence::as_formula() const { return forall(prefix, matrix); }

std::vector<Formula> UniversalSentence::conjuncts() const {
  if (matrix.kind == Formula::Kind::And) return matrix.children;
  return {matrix};
}

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
  std::string candidate = base;
  for (int k = 2; used.count(candidate); ++k) candidate = base + "_" + std::to_string(k);
  used.insert(candidate);
  return candidate;
}

}  // namespace loclang
