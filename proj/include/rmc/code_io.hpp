#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rmc/codes.hpp"

namespace rmc {

using Json = nlohmann::ordered_json;

Json field_to_json(const FieldTower& f);
FieldPtr field_from_json(const Json& j);

Json elem_to_json(const FieldTower& f, Elem a);
// Accepts a coefficient array, an integer (prime-field constant), or "a^k" / "alpha^k" / "α^k".
Elem elem_from_json(const FieldTower& f, const Json& j);
Elem parse_elem(const FieldTower& f, const std::string& s);
Vec parse_vec(const FieldTower& f, const std::string& csv);

Json spec_to_json(const FieldTower& f, const CodeSpec& s);
CodeSpec spec_from_json(const FieldTower& f, const Json& j);

struct CodeFile {
    LinearCode code;
    std::optional<CodeSpec> provenance;
};

Json code_to_json(const LinearCode& c, const std::optional<CodeSpec>& provenance = std::nullopt);
CodeFile code_from_json(const Json& j);
CodeFile read_code_file(const std::string& path);
void write_code_file(const std::string& path, const LinearCode& c, const std::optional<CodeSpec>& provenance = std::nullopt);

}  // namespace rmc
