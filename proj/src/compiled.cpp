#include "loclang/compiled.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>

#include "loclang/error.hpp"

namespace loclang {

Program::Program(const Formula& nnf_matrix, const std::vector<std::string>& vars, const Layout& layout)
    : vars_(vars), arity_(static_cast<int>(vars.size())), n_(layout.size()) {
  if (auto lt = layout.signature().index_of(kOrderSymbol)) order_offset_ = layout.slot(*lt).offset;
  layout_for_compile_ = &layout;
  root_ = compile(nnf_matrix);
  layout_for_compile_ = nullptr;
}

int Program::compile_term(const Term& t) {
  TermNode node{};
  switch (t.kind) {
    case Term::Kind::Variable: {
      auto it = std::find(vars_.begin(), vars_.end(), t.name);
      if (it == vars_.end()) throw InvalidArgument("variable '" + t.name + "' is not bound");
      node = {TermOp::Var, static_cast<int>(it - vars_.begin()), 0, 0, 0};
      break;
    }
    case Term::Kind::Constant:
    case Term::Kind::Apply: {
      SymbolKind kind = t.kind == Term::Kind::Constant ? SymbolKind::Constant : SymbolKind::Function;
      auto idx = layout_for_compile_->signature().index_of(t.name);
      const Symbol* s = idx ? &layout_for_compile_->signature().symbols()[*idx] : nullptr;
      if (s == nullptr || s->kind != kind || s->arity != static_cast<int>(t.args.size()))
        throw UnknownSymbolError("structure does not interpret " + std::string(to_string(kind)) + " '" + t.name + "'");
      node = {kind == SymbolKind::Constant ? TermOp::Const : TermOp::Apply, *idx,
              layout_for_compile_->slot(*idx).offset, s->arity, 0};
      break;
    }
    case Term::Kind::Min:
      if (order_offset_ < 0) throw UnknownSymbolError("min(...) needs the order '<'");
      node = {TermOp::Min, 0, order_offset_, static_cast<int>(t.args.size()), 0};
      break;
  }
  std::vector<int> args;
  for (const auto& a : t.args) args.push_back(compile_term(a));
  node.first = static_cast<int>(term_args_.size());
  term_args_.insert(term_args_.end(), args.begin(), args.end());
  terms_.push_back(node);
  return static_cast<int>(terms_.size()) - 1;
}

int Program::compile(const Formula& f) {
  using K = Formula::Kind;
  Node node{};
  auto atom_args = [&](const std::vector<Term>& ts) {
    std::vector<int> ids;
    for (const auto& t : ts) ids.push_back(compile_term(t));
    node.first = static_cast<int>(term_args_.size());
    node.count = static_cast<int>(ids.size());
    term_args_.insert(term_args_.end(), ids.begin(), ids.end());
  };
  auto relation_offset = [&](const Formula& a) {
    auto idx = layout_for_compile_->signature().index_of(a.name);
    const Symbol* s = idx ? &layout_for_compile_->signature().symbols()[*idx] : nullptr;
    if (s == nullptr || s->kind != SymbolKind::Relation || s->arity != static_cast<int>(a.terms.size()))
      throw UnknownSymbolError("structure does not interpret relation '" + a.name + "'");
    return layout_for_compile_->slot(*idx).offset;
  };
  switch (f.kind) {
    case K::True: node.op = Op::True; break;
    case K::False: node.op = Op::False; break;
    case K::Equal:
      node.op = Op::Eq;
      atom_args(f.terms);
      break;
    case K::Relation:
      node.op = Op::Rel;
      node.index = relation_offset(f);
      atom_args(f.terms);
      break;
    case K::Not: {
      const Formula& a = f.children.front();
      if (a.kind == K::Equal) {
        node.op = Op::Neq;
      } else if (a.kind == K::Relation) {
        node.op = Op::NotRel;
        node.index = relation_offset(a);
      } else {
        throw InvalidArgument("formula is not in negation normal form");
      }
      atom_args(a.terms);
      break;
    }
    case K::And:
    case K::Or: {
      std::vector<int> ids;
      for (const auto& c : f.children) ids.push_back(compile(c));
      node.op = f.kind == K::And ? Op::And : Op::Or;
      node.first = static_cast<int>(children_.size());
      node.count = static_cast<int>(ids.size());
      children_.insert(children_.end(), ids.begin(), ids.end());
      break;
    }
    default: throw InvalidArgument("formula is not a quantifier-free NNF matrix");
  }
  nodes_.push_back(node);
  return static_cast<int>(nodes_.size()) - 1;
}

int Program::eval_term(int t, const int* env, const int* cells, Unknowns& unknown) const {
  const TermNode& node = terms_[t];
  switch (node.op) {
    case TermOp::Var: return env[node.index];
    case TermOp::Const: {
      int v = cells[node.offset];
      if (v < 0) unknown.add(node.offset);
      return v;
    }
    case TermOp::Apply: {
      int args[kMaxArity];
      bool known = true;
      for (int i = 0; i < node.arity; ++i) {
        args[i] = eval_term(term_args_[node.first + i], env, cells, unknown);
        known = known && args[i] >= 0;
      }
      if (!known) return -1;
      int c = cell_of(node.offset, node.arity, args);
      if (cells[c] < 0) unknown.add(c);
      return cells[c];
    }
    case TermOp::Min: {
      int vals[16];
      std::vector<int> big;
      int* args = node.arity <= 16 ? vals : (big.resize(node.arity), big.data());
      bool known = true;
      for (int i = 0; i < node.arity; ++i) {
        args[i] = eval_term(term_args_[node.first + i], env, cells, unknown);
        known = known && args[i] >= 0;
      }
      if (!known) return -1;
      for (int i = 0; i < node.arity; ++i) {
        bool least = true;
        for (int j = 0; j < node.arity && least; ++j) {
          int c = node.offset + args[j] * n_ + args[i];
          if (cells[c] < 0) {
            unknown.add(c);
            return -1;
          }
          least = cells[c] == 0;
        }
        if (least) return args[i];
      }
      return args[0];
    }
  }
  return -1;
}

Truth Program::eval_node(int id, const int* env, const int* cells, Unknowns& unknown) const {
  const Node& node = nodes_[id];
  switch (node.op) {
    case Op::True: return Truth::True;
    case Op::False: return Truth::False;
    case Op::Eq:
    case Op::Neq: {
      int a = eval_term(term_args_[node.first], env, cells, unknown);
      int b = eval_term(term_args_[node.first + 1], env, cells, unknown);
      if (a < 0 || b < 0) return Truth::Unknown;
      return (a == b) == (node.op == Op::Eq) ? Truth::True : Truth::False;
    }
    case Op::Rel:
    case Op::NotRel: {
      int args[kMaxArity];
      bool known = true;
      for (int i = 0; i < node.count; ++i) {
        args[i] = eval_term(term_args_[node.first + i], env, cells, unknown);
        known = known && args[i] >= 0;
      }
      if (!known) return Truth::Unknown;
      int c = cell_of(node.index, node.count, args);
      if (cells[c] < 0) {
        unknown.add(c);
        return Truth::Unknown;
      }
      return (cells[c] != 0) == (node.op == Op::Rel) ? Truth::True : Truth::False;
    }
    case Op::And:
    case Op::Or: {
      Truth decisive = node.op == Op::And ? Truth::False : Truth::True;
      Truth result = node.op == Op::And ? Truth::True : Truth::False;
      for (int i = 0; i < node.count; ++i) {
        Truth r = eval_node(children_[node.first + i], env, cells, unknown);
        if (r == decisive) return decisive;
        if (r == Truth::Unknown) result = Truth::Unknown;
      }
      return result;
    }
  }
  return Truth::Unknown;
}

// ---------------------------------------------------------------- scoping

namespace {

std::vector<std::string> free_list(const Formula& f) {
  auto s = free_variables(f);
  return {s.begin(), s.end()};
}

ScopeNode block(const Formula& f) {
  ScopeNode node;
  node.kind = ScopeNode::Kind::Block;
  node.vars = free_list(f);
  node.formula = f;
  return node;
}

}  // namespace

ScopeNode miniscope(const Formula& f) {
  if (f.kind == Formula::Kind::And) {
    ScopeNode node;
    node.kind = ScopeNode::Kind::And;
    node.vars = free_list(f);
    node.formula = f;
    for (const auto& c : f.children) node.children.push_back(miniscope(c));
    return node;
  }
  if (f.kind == Formula::Kind::Or) {
    std::size_t k = f.children.size();
    std::vector<std::set<std::string>> fv;
    for (const auto& c : f.children) fv.push_back(free_variables(c));
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
      return parent[i] == i ? i : parent[i] = root(parent[i]);
    };
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        bool share = std::any_of(fv[i].begin(), fv[i].end(), [&](const std::string& v) { return fv[j].count(v); });
        if (share) parent[root(j)] = root(i);
      }
    std::vector<std::vector<Formula>> groups;
    std::vector<std::size_t> group_of(k, SIZE_MAX);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t r = root(i);
      if (group_of[r] == SIZE_MAX) {
        group_of[r] = groups.size();
        groups.emplace_back();
      }
      groups[group_of[r]].push_back(f.children[i]);
    }
    if (groups.size() == 1) return block(f);
    ScopeNode node;
    node.kind = ScopeNode::Kind::Or;
    node.vars = free_list(f);
    node.formula = f;
    for (auto& g : groups) node.children.push_back(miniscope(disj(std::move(g))));
    return node;
  }
  return block(f);
}

namespace {

using Cases = std::vector<std::vector<ScopeNode>>;

Cases expand(const ScopeNode& node, std::size_t max_cases) {
  switch (node.kind) {
    case ScopeNode::Kind::Block: return {{node}};
    case ScopeNode::Kind::Or: {
      Cases out;
      for (const auto& c : node.children) {
        Cases sub = expand(c, max_cases);
        out.insert(out.end(), sub.begin(), sub.end());
        if (out.size() > max_cases) return {{block(node.formula)}};
      }
      return out;
    }
    case ScopeNode::Kind::And: {
      std::vector<Cases> parts;
      for (const auto& c : node.children) parts.push_back(expand(c, max_cases));
      auto total = [&] {
        std::size_t t = 1;
        for (const auto& p : parts) t = std::min(t * p.size(), max_cases + 1);
        return t;
      };
      while (total() > max_cases) {
        std::size_t widest = 0;
        for (std::size_t i = 1; i < parts.size(); ++i)
          if (parts[i].size() > parts[widest].size()) widest = i;
        parts[widest] = {{block(node.children[widest].formula)}};
      }
      Cases out{{}};
      for (const auto& p : parts) {
        Cases next;
        for (const auto& prefix : out)
          for (const auto& alt : p) {
            auto merged = prefix;
            merged.insert(merged.end(), alt.begin(), alt.end());
            next.push_back(std::move(merged));
          }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

}  // namespace

std::vector<std::vector<ScopeNode>> scope_cases(const ScopeNode& root, std::size_t max_cases) {
  return expand(root, std::max<std::size_t>(max_cases, 1));
}

long long instance_count(int vars, int n) {
  long long c = 1;
  for (int i = 0; i < vars; ++i) c *= n;
  return c;
}

void decode_instance(long long index, int vars, int n, int* env) {
  for (int i = vars - 1; i >= 0; --i) {
    env[i] = static_cast<int>(index % n);
    index /= n;
  }
}

}  // namespace loclang
