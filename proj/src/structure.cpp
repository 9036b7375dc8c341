#include "loclang/structure.hpp"

#include <algorithm>
#include <map>

#include "loclang/error.hpp"

namespace loclang {

std::string Word::str() const {
  if (letters.empty()) return "λ";
  bool single = std::all_of(letters.begin(), letters.end(), [](const std::string& l) { return l.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!single && i) out += ' ';
    out += letters[i];
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  if (text.empty() || text == "λ" || text == "-") return w;
  if (text.find(' ') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find(' ', pos);
      if (end == std::string_view::npos) end = text.size();
      if (end > pos) w.letters.emplace_back(text.substr(pos, end - pos));
      pos = end + 1;
    }
    return w;
  }
  for (char c : text) w.letters.emplace_back(1, c);
  return w;
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
  return out;
}

void check_word(const Word& w, const Alphabet& alphabet) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (std::find(alphabet.begin(), alphabet.end(), w[i]) == alphabet.end())
      throw LetterError("letter '" + w[i] + "' at position " + std::to_string(i) + " is not in the alphabet");
}

bool length_lex_less(const Word& a, const Word& b, const Alphabet& alphabet) {
  if (a.size() != b.size()) return a.size() < b.size();
  auto rank = [&](const std::string& l) {
    auto it = std::find(alphabet.begin(), alphabet.end(), l);
    return it - alphabet.begin();
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto ra = rank(a[i]), rb = rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

void sort_length_lex(std::vector<Word>& words, const Alphabet& alphabet) {
  std::sort(words.begin(), words.end(),
            [&](const Word& a, const Word& b) { return length_lex_less(a, b, alphabet); });
}

// ------------------------------------------------------------------ Layout

Layout::Layout(const Signature& signature, int size) : signature_(signature), size_(size) {
  if (size < 0) throw StructureError("negative universe size");
  for (const auto& s : signature.symbols()) {
    long long count = 1;
    for (int i = 0; i < s.arity; ++i) count *= size;
    if (count > (1 << 24)) throw StructureError("structure too large for symbol '" + s.name + "'");
    slots_.push_back({cells_, s.arity, s.kind});
    owner_.insert(owner_.end(), static_cast<std::size_t>(count), static_cast<int>(slots_.size()) - 1);
    cells_ += static_cast<int>(count);
  }
}

std::pair<int, std::vector<int>> Layout::decode(int cell) const {
  int sym = owner_.at(cell);
  const Slot& s = slots_[sym];
  std::vector<int> args(s.arity);
  int idx = cell - s.offset;
  for (int i = s.arity - 1; i >= 0; --i) {
    args[i] = idx % size_;
    idx /= size_;
  }
  return {sym, args};
}

int Layout::domain_size(int cell) const {
  return slots_[owner_.at(cell)].kind == SymbolKind::Relation ? 2 : size_;
}

// -------------------------------------------------------- FiniteStructure

FiniteStructure::FiniteStructure(const Signature& signature, int size) : layout_(signature, size) {
  if (size == 0 && !signature.constants().empty())
    throw StructureError("the empty structure cannot interpret constants");
  cells_.assign(layout_.cell_count(), 0);
}

FiniteStructure::FiniteStructure(Layout layout, std::vector<int> cells)
    : layout_(std::move(layout)), cells_(std::move(cells)) {
  if (static_cast<int>(cells_.size()) != layout_.cell_count()) throw StructureError("cell count mismatch");
  check();
}

int FiniteStructure::symbol(std::string_view name, SymbolKind kind, std::size_t arity) const {
  auto idx = signature().index_of(name);
  if (!idx) throw UnknownSymbolError("structure does not interpret '" + std::string(name) + "'");
  const Symbol& s = signature().symbols()[*idx];
  if (s.kind != kind) throw UnknownSymbolError("'" + std::string(name) + "' is not a " + std::string(to_string(kind)));
  if (static_cast<std::size_t>(s.arity) != arity)
    throw ArityConflictError("'" + std::string(name) + "' has arity " + std::to_string(s.arity));
  return *idx;
}

int FiniteStructure::cell(std::string_view name, SymbolKind kind, const std::vector<int>& args) const {
  int sym = symbol(name, kind, args.size());
  for (int a : args)
    if (a < 0 || a >= size()) throw StructureError("element " + std::to_string(a) + " outside the universe");
  return layout_.cell(sym, args.data());
}

int FiniteStructure::constant(std::string_view name) const { return cells_[cell(name, SymbolKind::Constant, {})]; }

void FiniteStructure::set_constant(std::string_view name, int element) {
  if (element < 0 || element >= size()) throw StructureError("element outside the universe");
  cells_[cell(name, SymbolKind::Constant, {})] = element;
}

int FiniteStructure::apply(std::string_view name, const std::vector<int>& args) const {
  return cells_[cell(name, SymbolKind::Function, args)];
}

void FiniteStructure::set_function(std::string_view name, const std::vector<int>& args, int value) {
  if (value < 0 || value >= size()) throw StructureError("element outside the universe");
  cells_[cell(name, SymbolKind::Function, args)] = value;
}

bool FiniteStructure::holds(std::string_view name, const std::vector<int>& args) const {
  return cells_[cell(name, SymbolKind::Relation, args)] != 0;
}

void FiniteStructure::set_relation(std::string_view name, const std::vector<int>& args, bool value) {
  cells_[cell(name, SymbolKind::Relation, args)] = value ? 1 : 0;
}

std::vector<std::vector<int>> FiniteStructure::tuples(std::string_view name) const {
  auto idx = signature().index_of(name);
  if (!idx) throw UnknownSymbolError("structure does not interpret '" + std::string(name) + "'");
  const auto& slot = layout_.slot(*idx);
  if (slot.kind != SymbolKind::Relation) throw UnknownSymbolError("'" + std::string(name) + "' is not a relation");
  std::vector<std::vector<int>> out;
  int count = 1;
  for (int i = 0; i < slot.arity; ++i) count *= size();
  for (int k = 0; k < count; ++k)
    if (cells_[slot.offset + k]) out.push_back(layout_.decode(slot.offset + k).second);
  return out;
}

void FiniteStructure::check() const {
  if (size() == 0 && !signature().constants().empty())
    throw StructureError("the empty structure cannot interpret constants");
  for (int c = 0; c < layout_.cell_count(); ++c) {
    int v = cells_[c];
    if (v < 0 || v >= layout_.domain_size(c)) {
      auto [sym, args] = layout_.decode(c);
      throw StructureError("symbol '" + signature().symbols()[sym].name + "' has an out-of-range value");
    }
  }
}

bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
  return a.size() == b.size() && a.signature() == b.signature() &&
         reduct(b, a.signature()).cells_ == a.cells_;
}

// ------------------------------------------------------------ conversions

FiniteStructure word_to_structure(const Word& w, const Alphabet& alphabet) {
  check_word(w, alphabet);
  FiniteStructure m(word_signature(alphabet), static_cast<int>(w.size()));
  int n = m.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) m.set_relation(kOrderSymbol, {i, j}, true);
    m.set_relation(letter_predicate(w[i]), {i}, true);
  }
  return m;
}

Word structure_to_word(const FiniteStructure& m, const Alphabet& alphabet) {
  Signature lambda = word_signature(alphabet);
  if (!m.signature().includes(lambda)) throw StructureError("structure does not interpret the word signature");
  int n = m.size();
  std::string lt(kOrderSymbol);
  std::vector<int> rank(n, 0);
  for (int i = 0; i < n; ++i) {
    if (m.holds(lt, {i, i})) throw StructureError("'<' is not irreflexive");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool ij = m.holds(lt, {i, j}), ji = m.holds(lt, {j, i});
      if (ij == ji) throw StructureError("'<' is not a strict linear order");
      if (ji) ++rank[i];
      for (int k = 0; k < n; ++k)
        if (ij && m.holds(lt, {j, k}) && !m.holds(lt, {i, k})) throw StructureError("'<' is not transitive");
    }
  }
  Word w;
  w.letters.resize(n);
  for (int i = 0; i < n; ++i) {
    int found = 0;
    for (const auto& a : alphabet) {
      if (m.holds(letter_predicate(a), {i})) {
        ++found;
        w.letters[rank[i]] = a;
      }
    }
    if (found != 1)
      throw StructureError("letter predicates do not partition the universe at element " + std::to_string(i));
  }
  return w;
}

FiniteStructure reduct(const FiniteStructure& m, const Signature& sub) {
  if (!m.signature().includes(sub)) throw StructureError("not a subsignature: " + sub.to_string());
  Layout layout(sub, m.size());
  std::vector<int> cells(layout.cell_count());
  for (int s = 0; s < layout.symbol_count(); ++s) {
    const auto& src = m.layout().slot(*m.signature().index_of(sub.symbols()[s].name));
    const auto& dst = layout.slot(s);
    int next = s + 1 < layout.symbol_count() ? layout.slot(s + 1).offset : layout.cell_count();
    std::copy(m.cells().begin() + src.offset, m.cells().begin() + src.offset + (next - dst.offset),
              cells.begin() + dst.offset);
  }
  return FiniteStructure(std::move(layout), std::move(cells));
}

FiniteStructure extend_signature(const FiniteStructure& m, const Signature& larger, int fill) {
  if (!larger.includes(m.signature())) throw StructureError("signature does not extend the structure's");
  Layout layout(larger, m.size());
  std::vector<int> cells(layout.cell_count(), fill);
  for (int s = 0; s < layout.symbol_count(); ++s) {
    auto idx = m.signature().index_of(larger.symbols()[s].name);
    if (!idx) continue;
    const auto& src = m.layout().slot(*idx);
    const auto& dst = layout.slot(s);
    int next = s + 1 < layout.symbol_count() ? layout.slot(s + 1).offset : layout.cell_count();
    std::copy(m.cells().begin() + src.offset, m.cells().begin() + src.offset + (next - dst.offset),
              cells.begin() + dst.offset);
  }
  Layout copy = layout;
  return FiniteStructure(std::move(copy), std::move(cells));
}

FiniteStructure induced_substructure(const FiniteStructure& m, const std::vector<int>& elements) {
  std::vector<int> elems = elements;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  int n = m.size();
  std::vector<int> index(n, -1);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i] < 0 || elems[i] >= n) throw StructureError("element outside the universe");
    index[elems[i]] = static_cast<int>(i);
  }
  int k = static_cast<int>(elems.size());
  if (k == 0 && m.signature().constants().size()) throw StructureError("subset does not contain the constants");
  Layout layout(m.signature(), k);
  std::vector<int> cells(layout.cell_count(), 0);
  std::vector<int> args(kMaxArity), src_args(kMaxArity);
  for (int s = 0; s < layout.symbol_count(); ++s) {
    const auto& slot = layout.slot(s);
    int count = 1;
    for (int i = 0; i < slot.arity; ++i) count *= k;
    for (int t = 0; t < count; ++t) {
      int rest = t;
      for (int i = slot.arity - 1; i >= 0; --i) {
        args[i] = rest % k;
        rest /= k;
        src_args[i] = elems[args[i]];
      }
      int v = m.cells()[m.layout().cell(s, src_args.data())];
      if (slot.kind != SymbolKind::Relation) {
        if (index[v] < 0) {
          throw StructureError("subset is not closed under '" + m.signature().symbols()[s].name + "'");
        }
        v = index[v];
      }
      cells[slot.offset + t] = v;
    }
  }
  return FiniteStructure(std::move(layout), std::move(cells));
}

std::uint64_t element_mask(const std::vector<int>& elements) {
  std::uint64_t mask = 0;
  for (int e : elements) mask |= std::uint64_t{1} << e;
  return mask;
}

}  // namespace loclang
