#pragma once

// JSON encodings of states, reports and sweep summaries.
//
// Pure state:    {"dims": [2, 2], "re": [..], "im": [..]}
// Density matrix: {"dims": [2, 2], "re": [[..], ..], "im": [[..], ..]}
// "im" may be omitted for real data.

#include <string>
#include <variant>

#include <json.hpp>

#include "monolab/inequalities.hpp"
#include "monolab/qstate.hpp"
#include "monolab/verify.hpp"

namespace monolab::io {

using Json = nlohmann::ordered_json;
using AnyState = std::variant<qstate::PureState, qstate::DensityMatrix>;

Json to_json(const qstate::PureState& s);
Json to_json(const qstate::DensityMatrix& rho);
Json to_json(const inequalities::InequalityReport& r);
Json to_json(const verify::SweepSummary& s);

/// Throws ParseError on malformed input and the usual validation errors
/// (NotNormalized, NotHermitian, ...) on invalid states.
AnyState state_from_json(const nlohmann::json& j);
AnyState load_state_file(const std::string& path);

}  // namespace monolab::io
