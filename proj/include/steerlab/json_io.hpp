#pragma once

#include <string>

#include "steerlab/assemblage.hpp"
#include "steerlab/realization.hpp"

namespace steerlab {

// assemblage.v1 schema:
//   { "schema": "assemblage.v1", "m": ..., "k": ..., "n": ...,
//     "sigma": [ { "a": 1-based outcome, "x": 1-based setting,
//                  "re": [[...]], "im": [[...]] }, ... ] }
// The schema field is optional on input but must match when present; unknown
// fields are rejected.
std::string assemblage_to_json(const Assemblage& assemblage);
Assemblage assemblage_from_json(const std::string& text);

void write_assemblage(const Assemblage& assemblage, const std::string& path);
Assemblage read_assemblage(const std::string& path);

// realization.v1 schema: { "schema", "dA", "rho_AB": {re, im},
//                          "povms": [ [ {re, im}, ... ], ... ] }
std::string realization_to_json(const QuantumRealization& realization);
void write_realization(const QuantumRealization& realization, const std::string& path);

}  // namespace steerlab
