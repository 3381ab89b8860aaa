#pragma once

// JSON plumbing for the command-line tool: deterministic output with every
// float printed to 17 significant digits, Config loading, and serializers
// for the library's result types.

#include <string>

#include "json.hpp"
#include "dynatomic/acceptance.hpp"
#include "dynatomic/config.hpp"
#include "dynatomic/monodromy_engine.hpp"
#include "dynatomic/numeric_monodromy.hpp"
#include "dynatomic/parabolic.hpp"
#include "dynatomic/quad_diff.hpp"

namespace dynatomic::cli {

using Json = nlohmann::ordered_json;

/// Compact (indent < 0) or indented text; floats as %.17g, keys in insertion
/// order, so equal values always print identically.
std::string dump(const Json& j, int indent = -1);

/// Overrides the fields present in the JSON object; unknown keys and wrongly
/// typed values throw InvalidArgument.
void apply_config(const Json& j, Config& cfg);
Config load_config(const std::string& path);

Json to_json(cplx z);
Json to_json(const Word& w);
Json to_json(const Angle& a);
Json to_json(const QuadDiff& q);
Json to_json(const MonodromyMove& m);
Json to_json(const ConnectionPlan& p);
Json to_json(const ParabolicClass& pc, const std::optional<BetaFamily>& betas);
Json to_json(const PermutationReport& r);
Json to_json(const CriterionResult& r);

/// Parses the QuadDiff format [{"a":[re,im],"c2":[re,im],"c1":[re,im]}, ...].
QuadDiff quad_diff_from_json(const Json& j);

/// Accepts "re" or "re,im".
cplx parse_complex(const std::string& text);

}  // namespace dynatomic::cli
