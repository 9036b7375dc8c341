#include "loclang/signature.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "loclang/error.hpp"

namespace loclang {

std::string_view to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Constant: return "constant";
    case SymbolKind::Function: return "function";
    case SymbolKind::Relation: return "relation";
  }
  return "?";
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_' || u == '\'';
  });
}

void Signature::add(const Symbol& symbol) {
  if (symbol.name == "=") throw InvalidArgument("'=' is logical and cannot be a signature symbol");
  if (symbol.name == kOrderSymbol) {
    if (symbol.kind != SymbolKind::Relation || symbol.arity != 2)
      throw ArityConflictError("'<' is reserved for the binary order relation");
  } else if (!is_identifier(symbol.name)) {
    throw InvalidArgument("invalid symbol name '" + symbol.name + "'");
  }
  if (symbol.kind == SymbolKind::Constant && symbol.arity != 0)
    throw InvalidArgument("constant '" + symbol.name + "' must have arity 0");
  if (symbol.kind != SymbolKind::Constant && (symbol.arity < 1 || symbol.arity > kMaxArity))
    throw InvalidArgument("symbol '" + symbol.name + "' has arity " + std::to_string(symbol.arity) +
                          "; supported arities are 1.." + std::to_string(kMaxArity));
  if (auto it = index_.find(symbol.name); it != index_.end()) {
    const Symbol& existing = symbols_[it->second];
    if (existing == symbol) return;
    throw ArityConflictError("symbol '" + symbol.name + "' used as " + std::string(loclang::to_string(existing.kind)) +
                             "/" + std::to_string(existing.arity) + " and as " +
                             std::string(loclang::to_string(symbol.kind)) + "/" + std::to_string(symbol.arity));
  }
  index_.emplace(symbol.name, symbols_.size());
  symbols_.push_back(symbol);
}

const Symbol* Signature::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &symbols_[it->second];
}

std::optional<int> Signature::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return static_cast<int>(it->second);
}

bool Signature::contains(const Symbol& symbol) const {
  const Symbol* s = find(symbol.name);
  return s != nullptr && *s == symbol;
}

bool Signature::includes(const Signature& other) const {
  return std::all_of(other.symbols_.begin(), other.symbols_.end(),
                     [this](const Symbol& s) { return contains(s); });
}

Signature Signature::merged(const Signature& other) const {
  Signature out = *this;
  for (const auto& s : other.symbols_) out.add(s);
  return out;
}

Signature Signature::minus(const Signature& other) const {
  Signature out;
  for (const auto& s : symbols_)
    if (!other.contains_name(s.name)) out.add(s);
  return out;
}

std::vector<Symbol> Signature::of_kind(SymbolKind kind) const {
  std::vector<Symbol> out;
  for (const auto& s : symbols_)
    if (s.kind == kind) out.push_back(s);
  return out;
}

std::string Signature::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) os << ", ";
    os << symbols_[i].name;
    if (symbols_[i].kind != SymbolKind::Constant) os << '/' << symbols_[i].arity;
  }
  os << '}';
  return os.str();
}

bool operator==(const Signature& a, const Signature& b) {
  return a.size() == b.size() && a.includes(b);
}

}  // namespace loclang
