#ifndef FLAGFORGE_IO_HPP
#define FLAGFORGE_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "flagforge/diffmod.hpp"
#include "flagforge/rigidity.hpp"

namespace flagforge {

using Json = nlohmann::ordered_json;

// Ring JSON: {"field": "q" | prime, "vars": ["x1", ...]}.
Json ring_to_json(const RingPtr& ring);
RingPtr ring_from_json(const Json& j);

// Complex JSON: {"ring": {...}, "twists": [[...] per module],
// "maps": [rows-of-poly-strings per differential]}; maps[i] sends module
// i+1 to module i. The parsed complex is validated.
Json complex_to_json(const FreeComplex& C);
FreeComplex complex_from_json(const Json& j);

// Differential module JSON: {"ring": {...}, "degree": a, "twists": [...],
// "matrix": [[poly-strings]], "flag_levels": [[gen indices]] optional}.
// The parsed module is validated, including the flag axioms when present.
Json dm_to_json(const DifferentialModule& D);
DifferentialModule dm_from_json(const Json& j);

// Complete intersection JSON: {"ring": {...}, "gens": [poly-strings]} or
// the degrees-only form {"n": nvars, "degrees": [...], "field": optional}.
Json ci_to_json(const CompleteIntersection& ci);
CompleteIntersection ci_from_json(const Json& j);

// File helpers; ParseError names the file and the position or field.
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

// Field access that converts JSON type errors into ParseError.
const Json& json_field(const Json& j, const char* name);

uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t v);

// Run summary of one command: deterministic apart from the timing field.
struct RunReport {
    std::string command;
    std::string inputs_digest;
    Json stages = Json::array();
    Json results = Json::object();
    double seconds = 0.0;

    Json to_json() const;
};

} // namespace flagforge

#endif
