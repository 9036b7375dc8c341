#include "loclang/evaluator.hpp"

#include "loclang/error.hpp"
#include "loclang/normal_form.hpp"

namespace loclang {

int eval_term(const FiniteStructure& m, const Term& t, const Assignment& env) {
  switch (t.kind) {
    case Term::Kind::Variable: {
      auto it = env.find(t.name);
      if (it == env.end()) throw InvalidArgument("no value for variable '" + t.name + "'");
      return it->second;
    }
    case Term::Kind::Constant: return m.constant(t.name);
    case Term::Kind::Apply: {
      std::vector<int> args;
      for (const auto& a : t.args) args.push_back(eval_term(m, a, env));
      return m.apply(t.name, args);
    }
    case Term::Kind::Min: {
      if (!m.signature().contains({std::string(kOrderSymbol), SymbolKind::Relation, 2}))
        throw UnknownSymbolError("min(...) needs the order '<'");
      std::vector<int> args;
      for (const auto& a : t.args) args.push_back(eval_term(m, a, env));
      for (int a : args) {
        bool least = true;
        for (int b : args) least = least && !m.holds(kOrderSymbol, {b, a});
        if (least) return a;
      }
      return args.front();
    }
  }
  return -1;
}

bool eval_formula(const FiniteStructure& m, const Formula& f, Assignment env) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True: return true;
    case K::False: return false;
    case K::Equal: return eval_term(m, f.terms[0], env) == eval_term(m, f.terms[1], env);
    case K::Relation: {
      std::vector<int> args;
      for (const auto& t : f.terms) args.push_back(eval_term(m, t, env));
      return m.holds(f.name, args);
    }
    case K::Not: return !eval_formula(m, f.children[0], env);
    case K::And:
      for (const auto& c : f.children)
        if (!eval_formula(m, c, env)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children)
        if (eval_formula(m, c, env)) return true;
      return false;
    case K::Implies: return !eval_formula(m, f.children[0], env) || eval_formula(m, f.children[1], env);
    case K::Forall:
    case K::Exists: {
      bool universal = f.kind == K::Forall;
      for (int e = 0; e < m.size(); ++e) {
        env[f.name] = e;
        if (eval_formula(m, f.children[0], env) != universal) return !universal;
      }
      return universal;
    }
  }
  return false;
}

namespace {

bool check_node(const ScopeNode& node, const FiniteStructure& m, Assignment& failure) {
  switch (node.kind) {
    case ScopeNode::Kind::And:
      for (const auto& c : node.children)
        if (!check_node(c, m, failure)) return false;
      return true;
    case ScopeNode::Kind::Or: {
      Assignment combined;
      for (const auto& c : node.children) {
        Assignment part;
        if (check_node(c, m, part)) return true;
        combined.insert(part.begin(), part.end());
      }
      failure.insert(combined.begin(), combined.end());
      return false;
    }
    case ScopeNode::Kind::Block: {
      Program program(node.formula, node.vars, m.layout());
      int k = static_cast<int>(node.vars.size());
      long long count = instance_count(k, m.size());
      std::vector<int> env(std::max(k, 1));
      Unknowns unknown;
      for (long long i = 0; i < count; ++i) {
        decode_instance(i, k, m.size(), env.data());
        if (program.eval(env.data(), m.cells().data(), unknown) != Truth::True) {
          for (int v = 0; v < k; ++v) failure[node.vars[v]] = env[v];
          return false;
        }
      }
      return true;
    }
  }
  return true;
}

}  // namespace

CompiledSentence::CompiledSentence(const UniversalSentence& u)
    : sentence_(u), scope_(miniscope(to_nnf(u.matrix))) {}

SatisfactionResult CompiledSentence::check(const FiniteStructure& m) const {
  SatisfactionResult r;
  if (m.size() == 0 && !sentence_.prefix.empty()) {
    for (const auto& b : scope_cases(scope_, 1)) {
      for (const auto& blk : b) Program(blk.formula, blk.vars, m.layout());
    }
    return r;
  }
  Assignment failure;
  if (!check_node(scope_, m, failure)) {
    r.holds = false;
    for (const auto& v : sentence_.prefix) r.counterexample[v] = failure.count(v) ? failure[v] : 0;
  }
  return r;
}

SatisfactionResult satisfies(const FiniteStructure& m, const UniversalSentence& u) {
  return CompiledSentence(u).check(m);
}

}  // namespace loclang
