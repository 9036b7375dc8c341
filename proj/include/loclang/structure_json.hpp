#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "loclang/structure.hpp"

namespace loclang {

/// {"size": n,
///  "constants": {"c": 0},
///  "relations": {"<": {"arity": 2, "tuples": [[0, 1]]}},
///  "functions": {"f": {"arity": 2, "table": [...]}}}   row-major, n^arity entries
nlohmann::ordered_json structure_to_json(const FiniteStructure& m);
FiniteStructure structure_from_json(const nlohmann::ordered_json& j);

std::string structure_to_json_text(const FiniteStructure& m, int indent = -1);
FiniteStructure structure_from_json_text(std::string_view text);

}  // namespace loclang
