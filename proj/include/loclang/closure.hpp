#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loclang/structure.hpp"

namespace loclang {

struct ClosureTrace {
  /// stages[0] = X, stages[i+1] = cl¹(stages[i]); the last stage is closed.
  /// Each stage is sorted.
  std::vector<std::vector<int>> stages;

  /// Least k with cl^k = cl^{k+1}.
  int steps() const noexcept { return static_cast<int>(stages.size()) - 1; }
  const std::vector<int>& result() const { return stages.back(); }
};

/// One closure step: X plus all constants plus every f(tuple) over X.
std::vector<int> closure_step(const FiniteStructure& m, const std::vector<int>& x);
ClosureTrace closure(const FiniteStructure& m, const std::vector<int>& x);

/// The substructure on cl(X, M), renumbered in increasing order.
FiniteStructure generated_substructure(const FiniteStructure& m, const std::vector<int>& x);

struct IndiscernibilityResult {
  bool indiscernible = true;
  /// Two order-isomorphic tuples from X that disagree, and the atomic
  /// formula (over variables x1..xl and parameters p<e>) that separates them.
  std::vector<int> first;
  std::vector<int> second;
  std::string atom;

  explicit operator bool() const noexcept { return indiscernible; }
};

/// X is indiscernible above P at complexity k: increasing tuples from X of
/// length at most `max_length` satisfy the same atomic formulas whose terms
/// use at most k function applications over the tuple, elements of P and
/// the constants. Throws InvalidArgument if X is not linearly ordered by <.
IndiscernibilityResult is_indiscernible_above(const FiniteStructure& m, const std::vector<int>& x,
                                              const std::vector<int>& p, int k, int max_length = 3);

}  // namespace loclang
