#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "spectile/analysis.hpp"
#include "spectile/groups.hpp"

namespace spectile::io {

// Set file: {"moduli":[6,6,6,6,6], "elements":[[0,0,0,0,0],[1,0,0,0,0],...]}
// Coordinates must already be reduced; anything else is an InputError whose
// message names the offending position.

GroupSubset subset_from_json(const nlohmann::json& j, const std::string& where = "");
nlohmann::json subset_to_json(const GroupSubset& s);
GroupSubset read_subset(const std::string& path);
void write_subset(const GroupSubset& s, const std::string& path);

/// Parses text, turning nlohmann parse errors into InputError with line/column.
nlohmann::json parse_json_text(const std::string& text, const std::string& source);
nlohmann::json read_json_file(const std::string& path);

/// Elements listed under `key` as coordinate arrays of `g`.
std::vector<Elem> elems_from_json(const Group& g, const nlohmann::json& arr, const std::string& where);
nlohmann::json elems_to_json(std::span<const Elem> elems);
nlohmann::json elem_to_json(const Elem& e);

/// {"rows": [[entry,...],...]} with entries integers or "p/q" strings,
/// optionally {"denominator": D} scaling every entry.
RationalMatrix matrix_from_json(const nlohmann::json& j);

/// {"moduli":[...], "zeros":[[...],...]} sorted by dual index.
nlohmann::json zero_set_to_json(const GroupSubset& zeros);

}  // namespace spectile::io
