#include "loclang/normal_form.hpp"

#include <algorithm>

#include "loclang/error.hpp"

namespace loclang {

namespace {

void collect(const Term& t, Signature& sig) {
  switch (t.kind) {
    case Term::Kind::Variable: break;
    case Term::Kind::Constant: sig.add_constant(t.name); break;
    case Term::Kind::Apply: sig.add_function(t.name, static_cast<int>(t.args.size())); break;
    case Term::Kind::Min: sig.add_relation(std::string(kOrderSymbol), 2); break;
  }
  for (const auto& a : t.args) collect(a, sig);
}

}  // namespace

Signature signature_of(const Formula& f) {
  Signature sig;
  visit_formulas(f, [&](const Formula& g) {
    if (g.kind == Formula::Kind::Relation) sig.add_relation(g.name, static_cast<int>(g.terms.size()));
    for (const auto& t : g.terms) collect(t, sig);
  });
  return sig;
}

Signature signature_of(const UniversalSentence& u) { return signature_of(u.matrix); }

namespace {

Formula nnf(const Formula& f, bool positive) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True: return positive ? f_true() : f_false();
    case K::False: return positive ? f_false() : f_true();
    case K::Equal:
    case K::Relation: return positive ? f : neg(f);
    case K::Not: return nnf(f.children.front(), !positive);
    case K::And:
    case K::Or: {
      std::vector<Formula> parts;
      for (const auto& c : f.children) parts.push_back(nnf(c, positive));
      bool conjunctive = (f.kind == K::And) == positive;
      return conjunctive ? conj(std::move(parts)) : disj(std::move(parts));
    }
    case K::Implies: {
      Formula a = nnf(f.children[0], !positive);
      Formula b = nnf(f.children[1], positive);
      return positive ? disj({std::move(a), std::move(b)}) : conj({std::move(a), std::move(b)});
    }
    case K::Forall:
    case K::Exists: {
      bool universal = (f.kind == K::Forall) == positive;
      Formula body = nnf(f.children.front(), positive);
      return universal ? forall({f.name}, std::move(body)) : exists({f.name}, std::move(body));
    }
  }
  return f;
}

struct Pulled {
  std::vector<std::string> prefix;
  Formula matrix;
};

class Prenexer {
 public:
  explicit Prenexer(const Formula& s) : reserved_(all_variable_names(s)) {
    Signature sig = signature_of(s);
    for (const auto& sym : sig.symbols()) reserved_.insert(sym.name);
  }

  Pulled pull(const Formula& f, bool positive, const std::set<std::string>& blocked) {
    using K = Formula::Kind;
    if (is_quantifier_free(f)) return {{}, f};
    switch (f.kind) {
      case K::Not: {
        Pulled r = pull(f.children.front(), !positive, blocked);
        return {std::move(r.prefix), neg(std::move(r.matrix))};
      }
      case K::Forall:
      case K::Exists: {
        bool universal = (f.kind == K::Forall) == positive;
        if (!universal) {
          throw NotUniversalError(std::string(f.kind == K::Forall ? "universal" : "existential") +
                                  " quantifier on '" + f.name + "' is existential in effect (" +
                                  (positive ? "positive" : "negative") + " position)");
        }
        std::string name = f.name;
        Formula body = f.children.front();
        if (blocked.count(name)) {
          std::set<std::string> avoid = blocked;
          avoid.insert(reserved_.begin(), reserved_.end());
          avoid.insert(introduced_.begin(), introduced_.end());
          name = fresh_name(f.name, avoid);
          introduced_.insert(name);
          body = rename_free_variables(body, {{f.name, name}});
        }
        std::set<std::string> inner = blocked;
        inner.insert(name);
        Pulled r = pull(body, positive, inner);
        r.prefix.insert(r.prefix.begin(), name);
        dedupe(r.prefix);
        return r;
      }
      case K::And:
      case K::Or:
      case K::Implies: {
        bool merge = (f.kind == K::And) == positive;
        std::set<std::string> local = blocked;
        std::vector<std::string> prefix;
        std::vector<Formula> parts;
        for (std::size_t i = 0; i < f.children.size(); ++i) {
          bool child_positive = f.kind == K::Implies && i == 0 ? !positive : positive;
          Pulled r = pull(f.children[i], child_positive, local);
          if (!merge) local.insert(r.prefix.begin(), r.prefix.end());
          prefix.insert(prefix.end(), r.prefix.begin(), r.prefix.end());
          parts.push_back(std::move(r.matrix));
        }
        dedupe(prefix);
        Formula m{f.kind, {}, {}, std::move(parts)};
        return {std::move(prefix), std::move(m)};
      }
      default: return {{}, f};
    }
  }

 private:
  static void dedupe(std::vector<std::string>& v) {
    std::vector<std::string> out;
    for (auto& x : v)
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
    v = std::move(out);
  }

  std::set<std::string> reserved_;
  std::set<std::string> introduced_;
};

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, true); }

UniversalSentence to_universal_prenex(const Formula& sentence) {
  if (!is_sentence(sentence)) throw InvalidArgument("formula has free variables; expected a sentence");
  Prenexer p(sentence);
  std::set<std::string> symbols;
  Signature sig = signature_of(sentence);
  for (const auto& sym : sig.symbols()) symbols.insert(sym.name);
  Pulled r = p.pull(sentence, true, symbols);
  return {std::move(r.prefix), std::move(r.matrix)};
}

}  // namespace loclang
