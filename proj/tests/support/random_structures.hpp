#pragma once

#include <random>

#include "loclang/structure.hpp"

namespace testing_support {

inline loclang::FiniteStructure random_structure(const loclang::Signature& sig, int n, std::mt19937_64& rng) {
  loclang::Layout layout(sig, n);
  std::vector<int> cells(static_cast<std::size_t>(layout.cell_count()));
  for (int c = 0; c < layout.cell_count(); ++c)
    cells[c] = std::uniform_int_distribution<int>(0, layout.domain_size(c) - 1)(rng);
  return loclang::FiniteStructure(layout, cells);
}

/// Calls fn on every structure over sig of size n; false when there are more
/// than `limit`.
template <class Fn>
bool for_all_structures(const loclang::Signature& sig, int n, double limit, Fn fn) {
  loclang::Layout layout(sig, n);
  double total = 1;
  for (int c = 0; c < layout.cell_count(); ++c) total *= layout.domain_size(c);
  if (total > limit) return false;
  std::vector<int> cells(static_cast<std::size_t>(layout.cell_count()), 0);
  while (true) {
    fn(loclang::FiniteStructure(layout, cells));
    int c = 0;
    for (; c < layout.cell_count(); ++c) {
      if (++cells[c] < layout.domain_size(c)) break;
      cells[c] = 0;
    }
    if (c == layout.cell_count()) return true;
  }
}

}  // namespace testing_support
