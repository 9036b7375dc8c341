#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "loclang/local_sentence.hpp"
#include "loclang/signature.hpp"

namespace loclang {

/// Finite word; letters may be longer than one character.
struct Word {
  std::vector<std::string> letters;

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  const std::string& operator[](std::size_t i) const { return letters[i]; }

  /// Letters concatenated when they are all single characters, otherwise
  /// space separated. The empty word prints as "λ".
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
};

/// "λ", "" and "-" give the empty word; text with spaces is split on spaces,
/// anything else is read one character per letter.
Word parse_word(std::string_view text);
Word concat(const Word& u, const Word& v);
void check_word(const Word& w, const Alphabet& alphabet);

/// Length-lexicographic order, letters compared by alphabet position.
bool length_lex_less(const Word& a, const Word& b, const Alphabet& alphabet);
void sort_length_lex(std::vector<Word>& words, const Alphabet& alphabet);

/// Cell layout of a structure: every symbol owns a contiguous block of
/// n^arity cells (constants own one cell), tuples in row-major order.
class Layout {
 public:
  struct Slot {
    int offset;
    int arity;
    SymbolKind kind;
  };

  Layout() = default;
  Layout(const Signature& signature, int size);

  int size() const noexcept { return size_; }
  int cell_count() const noexcept { return cells_; }
  const Signature& signature() const noexcept { return signature_; }
  const Slot& slot(int symbol) const { return slots_[symbol]; }
  int symbol_count() const noexcept { return static_cast<int>(slots_.size()); }

  int cell(int symbol, const int* args) const {
    const Slot& s = slots_[symbol];
    int idx = 0;
    for (int i = 0; i < s.arity; ++i) idx = idx * size_ + args[i];
    return s.offset + idx;
  }
  /// Symbol owning a cell and the argument tuple it stands for.
  std::pair<int, std::vector<int>> decode(int cell) const;
  /// Number of values a cell can take: n for constants/functions, 2 for relations.
  int domain_size(int cell) const;

 private:
  Signature signature_;
  int size_ = 0;
  int cells_ = 0;
  std::vector<Slot> slots_;
  std::vector<int> owner_;  // symbol per cell
};

/// A structure with universe {0..n-1}. Function and constant cells hold
/// elements, relation cells hold 0/1.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  /// All relations empty, all functions and constants mapped to 0. Throws
  /// StructureError for an empty universe with constants.
  FiniteStructure(const Signature& signature, int size);
  FiniteStructure(Layout layout, std::vector<int> cells);

  int size() const noexcept { return layout_.size(); }
  const Signature& signature() const noexcept { return layout_.signature(); }
  const Layout& layout() const noexcept { return layout_; }
  const std::vector<int>& cells() const noexcept { return cells_; }
  std::vector<int>& mutable_cells() noexcept { return cells_; }

  int constant(std::string_view name) const;
  void set_constant(std::string_view name, int element);
  int apply(std::string_view name, const std::vector<int>& args) const;
  void set_function(std::string_view name, const std::vector<int>& args, int value);
  bool holds(std::string_view name, const std::vector<int>& args) const;
  void set_relation(std::string_view name, const std::vector<int>& args, bool value);
  std::vector<std::vector<int>> tuples(std::string_view name) const;

  /// Throws StructureError if some cell is out of range.
  void check() const;

  friend bool operator==(const FiniteStructure& a, const FiniteStructure& b);

 private:
  int symbol(std::string_view name, SymbolKind kind, std::size_t arity) const;
  int cell(std::string_view name, SymbolKind kind, const std::vector<int>& args) const;

  Layout layout_;
  std::vector<int> cells_;
};

/// Word structure over Λ_Σ: "<" the natural order, P_a the positions of a.
FiniteStructure word_to_structure(const Word& w, const Alphabet& alphabet);

/// The word read off the Λ_Σ-reduct. Throws StructureError when < is not a
/// strict linear order or the letter predicates do not partition the universe.
Word structure_to_word(const FiniteStructure& m, const Alphabet& alphabet);

/// Restriction to a subsignature; throws StructureError otherwise.
FiniteStructure reduct(const FiniteStructure& m, const Signature& sub);

/// Same universe and interpretations over `larger`, which must include the
/// structure's signature; new cells are left at `fill`.
FiniteStructure extend_signature(const FiniteStructure& m, const Signature& larger, int fill = 0);

/// Substructure on `elements` (sorted, renumbered in increasing order).
/// Throws StructureError if `elements` is not closed.
FiniteStructure induced_substructure(const FiniteStructure& m, const std::vector<int>& elements);

std::uint64_t element_mask(const std::vector<int>& elements);

}  // namespace loclang
