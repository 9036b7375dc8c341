#pragma once

#include <string>
#include <vector>

#include "loclang/structure.hpp"
#include "loclang/syntax.hpp"

namespace loclang {

/// Unknown cells met while evaluating under a partial interpretation. Only
/// the first two distinct cells are kept.
struct Unknowns {
  int cells[2] = {-1, -1};
  int count = 0;

  void add(int c) {
    if (count == 2 || (count == 1 && cells[0] == c)) return;
    cells[count++] = c;
  }
  void clear() { count = 0; }
};

/// Three-valued truth: cells holding -1 are not yet interpreted.
enum class Truth : signed char { False = 0, True = 1, Unknown = 2 };

/// A quantifier-free formula in negation normal form, compiled against a
/// Layout. Variables are numbered 0..arity-1 locally.
class Program {
 public:
  Program() = default;
  /// `vars` gives the local slot order. Throws UnknownSymbolError when the
  /// layout lacks a symbol (or "<" for min).
  Program(const Formula& nnf_matrix, const std::vector<std::string>& vars, const Layout& layout);

  int arity() const noexcept { return arity_; }
  Truth eval(const int* env, const int* cells, Unknowns& unknown) const { return eval_node(root_, env, cells, unknown); }

 private:
  enum class Op : unsigned char { True, False, Eq, Neq, Rel, NotRel, And, Or };
  enum class TermOp : unsigned char { Var, Const, Apply, Min };

  struct TermNode {
    TermOp op;
    int index;   // variable slot or symbol
    int offset;  // first cell of the symbol
    int arity;
    int first;   // into term_args_
  };
  struct Node {
    Op op;
    int index;  // first cell of the relation for Rel/NotRel
    int first;  // into children_ (And/Or) or term_args_ (atoms)
    int count;
  };

  int compile(const Formula& f);
  int compile_term(const Term& t);
  int eval_term(int t, const int* env, const int* cells, Unknowns& unknown) const;
  Truth eval_node(int node, const int* env, const int* cells, Unknowns& unknown) const;
  int cell_of(int offset, int arity, const int* args) const {
    int idx = 0;
    for (int i = 0; i < arity; ++i) idx = idx * n_ + args[i];
    return offset + idx;
  }

  const Layout* layout_for_compile_ = nullptr;
  std::vector<std::string> vars_;
  int arity_ = 0;
  int n_ = 0;
  int order_offset_ = -1;
  std::vector<TermNode> terms_;
  std::vector<int> term_args_;
  std::vector<Node> nodes_;
  std::vector<int> children_;
  int root_ = -1;
};

/// The matrix decomposed along conjunctions and variable-disjoint
/// disjunctions. A Block is universally quantified over its own variables;
/// over a nonempty universe the tree is equivalent to the universal closure
/// of the matrix.
struct ScopeNode {
  enum class Kind { And, Or, Block } kind = Kind::Block;
  std::vector<ScopeNode> children;
  std::vector<std::string> vars;  // free variables
  Formula formula;                // NNF
};

ScopeNode miniscope(const Formula& nnf_matrix);

/// Alternatives of a scope tree: each case is a list of blocks that must all
/// hold. Or nodes are expanded while the number of cases stays within
/// `max_cases`; past that a subtree is kept as one block.
std::vector<std::vector<ScopeNode>> scope_cases(const ScopeNode& root, std::size_t max_cases);

/// Number of instances of a block over a universe of size n: n^vars.
long long instance_count(int vars, int n);
void decode_instance(long long index, int vars, int n, int* env);

}  // namespace loclang
