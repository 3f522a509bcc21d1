#pragma once

#include <json.hpp>

#include "degenop/generation.hpp"
#include "degenop/solver.hpp"
#include "degenop/transforms.hpp"

namespace degenop {

using Json = nlohmann::ordered_json;

/// Schema error: unknown keys, missing keys, malformed values.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json to_json(const OperatorParams& params);
Json to_json(const SpaceParams& space);
Json to_json(const ValidationReport& report);
Json to_json(const IndicialData& ind);
Json to_json(const GenerationReport& report);
Json to_json(const DomainSpec& spec);
Json to_json(const TransformPipeline& pipe);
Json to_json(const SolveInfo& info);

/// Strict parsers: every key required unless stated, unknown keys rejected.
OperatorParams operator_from_json(const Json& j);
SpaceParams space_from_json(const Json& j);
BoundaryCondition bc_from_json(const Json& j);
GradedMesh mesh_from_json(const Json& j);

/// Full analyze document: validation, indicial data, generation verdicts for
/// both boundary conditions, domain descriptions, regime flags, reduction
/// pipelines.
Json analyze_report(const OperatorParams& params, const SpaceParams& space);

/// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string config_hash(const Json& config);

extern const char* const kToolVersion;
constexpr int kSchemaVersion = 1;

}  // namespace degenop
