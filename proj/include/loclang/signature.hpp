#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace loclang {

enum class SymbolKind { Constant, Function, Relation };

std::string_view to_string(SymbolKind kind);

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Constant;
  int arity = 0;  // 0 for constants, >= 1 otherwise

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Largest arity accepted for function and relation symbols.
inline constexpr int kMaxArity = 3;

/// Name of the builtin order relation of word signatures.
inline constexpr std::string_view kOrderSymbol = "<";

/// A finite table of non-logical symbols. Names are unique across kinds;
/// "=" is logical and never part of a signature. The order "<" is stored as
/// an ordinary binary relation and may not be redeclared with another arity.
/// Symbols keep insertion order.
class Signature {
 public:
  Signature() = default;

  /// Adds a symbol, or does nothing if an identical symbol is present.
  /// Throws ArityConflictError when the name exists with another kind/arity
  /// and InvalidArgument on a bad name or arity.
  void add(const Symbol& symbol);
  void add_constant(const std::string& name) { add({name, SymbolKind::Constant, 0}); }
  void add_function(const std::string& name, int arity) { add({name, SymbolKind::Function, arity}); }
  void add_relation(const std::string& name, int arity) { add({name, SymbolKind::Relation, arity}); }

  const Symbol* find(std::string_view name) const;
  std::optional<int> index_of(std::string_view name) const;
  bool contains(const Symbol& symbol) const;
  bool contains_name(std::string_view name) const { return find(name) != nullptr; }

  /// True iff every symbol of `other` is present here with the same kind and arity.
  bool includes(const Signature& other) const;

  /// Union; throws ArityConflictError on incompatible entries.
  Signature merged(const Signature& other) const;
  /// Symbols of this signature that are not in `other`.
  Signature minus(const Signature& other) const;

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  std::vector<Symbol> constants() const { return of_kind(SymbolKind::Constant); }
  std::vector<Symbol> functions() const { return of_kind(SymbolKind::Function); }
  std::vector<Symbol> relations() const { return of_kind(SymbolKind::Relation); }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }

  /// "{P_a/1, </2, c}" style listing in insertion order.
  std::string to_string() const;

  friend bool operator==(const Signature& a, const Signature& b);

 private:
  std::vector<Symbol> of_kind(SymbolKind kind) const;

  std::vector<Symbol> symbols_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Valid bare identifier for DSL symbols and variables.
bool is_identifier(std::string_view name);

}  // namespace loclang
