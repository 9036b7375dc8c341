#include "loclang/structure_json.hpp"

#include "loclang/error.hpp"

namespace loclang {

nlohmann::ordered_json structure_to_json(const FiniteStructure& m) {
  nlohmann::ordered_json j;
  j["size"] = m.size();
  j["constants"] = nlohmann::ordered_json::object();
  j["relations"] = nlohmann::ordered_json::object();
  j["functions"] = nlohmann::ordered_json::object();
  const auto& layout = m.layout();
  for (int s = 0; s < layout.symbol_count(); ++s) {
    const Symbol& sym = m.signature().symbols()[s];
    const auto& slot = layout.slot(s);
    switch (sym.kind) {
      case SymbolKind::Constant: j["constants"][sym.name] = m.cells()[slot.offset]; break;
      case SymbolKind::Relation: {
        nlohmann::ordered_json rel;
        rel["arity"] = sym.arity;
        rel["tuples"] = m.tuples(sym.name);
        j["relations"][sym.name] = rel;
        break;
      }
      case SymbolKind::Function: {
        int end = s + 1 < layout.symbol_count() ? layout.slot(s + 1).offset : layout.cell_count();
        nlohmann::ordered_json fn;
        fn["arity"] = sym.arity;
        fn["table"] = std::vector<int>(m.cells().begin() + slot.offset, m.cells().begin() + end);
        j["functions"][sym.name] = fn;
        break;
      }
    }
  }
  return j;
}

FiniteStructure structure_from_json(const nlohmann::ordered_json& j) {
  try {
    int n = j.at("size").get<int>();
    Signature sig;
    if (j.contains("constants"))
      for (const auto& [name, _] : j.at("constants").items()) sig.add_constant(name);
    if (j.contains("functions"))
      for (const auto& [name, v] : j.at("functions").items()) sig.add_function(name, v.at("arity").get<int>());
    if (j.contains("relations"))
      for (const auto& [name, v] : j.at("relations").items()) sig.add_relation(name, v.at("arity").get<int>());
    FiniteStructure m(sig, n);
    if (j.contains("constants"))
      for (const auto& [name, v] : j.at("constants").items()) m.set_constant(name, v.get<int>());
    if (j.contains("functions")) {
      for (const auto& [name, v] : j.at("functions").items()) {
        auto table = v.at("table").get<std::vector<int>>();
        const auto& slot = m.layout().slot(*sig.index_of(name));
        long long expected = 1;
        for (int i = 0; i < slot.arity; ++i) expected *= n;
        if (static_cast<long long>(table.size()) != expected)
          throw StructureError("function '" + name + "' needs " + std::to_string(expected) + " table entries");
        for (std::size_t i = 0; i < table.size(); ++i) {
          if (table[i] < 0 || table[i] >= n) throw StructureError("function '" + name + "' leaves the universe");
          m.mutable_cells()[slot.offset + i] = table[i];
        }
      }
    }
    if (j.contains("relations")) {
      for (const auto& [name, v] : j.at("relations").items()) {
        for (const auto& t : v.at("tuples")) {
          auto tuple = t.get<std::vector<int>>();
          if (static_cast<int>(tuple.size()) != v.at("arity").get<int>())
            throw StructureError("tuple of wrong length in relation '" + name + "'");
          m.set_relation(name, tuple, true);
        }
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw StructureError(std::string("malformed structure document: ") + e.what());
  }
}

std::string structure_to_json_text(const FiniteStructure& m, int indent) { return structure_to_json(m).dump(indent); }

FiniteStructure structure_from_json_text(std::string_view text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw StructureError(std::string("invalid JSON: ") + e.what());
  }
  return structure_from_json(j);
}

}  // namespace loclang
