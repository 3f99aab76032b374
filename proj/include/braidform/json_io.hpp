#pragma once

#include <json.hpp>

#include "braidform/braid.hpp"
#include "braidform/rmatrix.hpp"

namespace braidform {

using ordered_json = nlohmann::ordered_json;

/// {"strands": N, "letters": [[i, s], ...]} with s ∈ {1, −1}.
ordered_json braid_word_to_json(const BraidWord& w);
BraidWord braid_word_from_json(const nlohmann::json& j);

/// {"entries": [[[re, im] ×4] ×4], "tag": "...", "theta": θ, "epsilon": ±1}.
/// Catalog provenance fields are omitted for custom matrices.
ordered_json rmatrix_to_json(const RMatrix& m);

/// Reads entries and, when present, provenance. A tagged matrix whose entries
/// disagree with the catalog entry for its parameters is rejected.
RMatrix rmatrix_from_json(const nlohmann::json& j);

}  // namespace braidform
