#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "meroq/decompose.hpp"
#include "meroq/qlinalg.hpp"

namespace meroq {

// Inner-product configuration: {"block": [[rational strings]], "beyond": "identity"}.
// Rationals are "p/q" or integer strings. An empty/missing block means the
// identity family. Throws Error subclasses on malformed input or a non-SPD block.
InnerProductFamily family_from_json(const nlohmann::json& j);
// Reads the file and delegates to family_from_json. Throws Error if unreadable.
InnerProductFamily family_from_file(const std::string& path);

// {"holomorphic": <poly string>,
//  "polar": [{"num": <poly string>,
//             "den": [{"form": [int coefficients], "power": int}]}]}
nlohmann::json decomposition_to_json(const Decomposition& d, int k);

// Text rendering of one polar term: [num]/[(form)^p*...].
std::string polar_term_text(const PolarTerm& t);

// Basis rows of a covector subspace as primitive integer lists (first nonzero
// positive), each padded to the ambient dimension.
std::vector<std::vector<Int>> covector_rows(const Subspace& s);
nlohmann::json covector_rows_json(const Subspace& s);

}  // namespace meroq
