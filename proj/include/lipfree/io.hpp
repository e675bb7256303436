#pragma once

#include "lipfree/checks.hpp"
#include "lipfree/extremal.hpp"
#include "lipfree/norm.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace lipfree::io {

using Json = nlohmann::json;

constexpr int kSchemaVersion = 1;

/// Reads a whole file; a missing or unreadable file is an InvalidArgument error.
std::string read_file(const std::filesystem::path& path);

// Parsers. Syntax and shape errors are ParseError with the 1-based line and
// column of the offending token; metric axioms are checked by validate_space.

/// {"labels": [...], "base": label, "distances": [[rational, ...], ...]}
SpacePtr parse_space(std::string_view text);
/// {label: rational, ...}
FreeElement parse_element(const SpacePtr& space, std::string_view text);
/// {"kind": "lipschitz", "values": {label: rational}} with every point present.
/// A bare {label: rational} object is accepted too.
LipFunction parse_function(const SpacePtr& space, std::string_view text);
/// {"kind": "weight", "values": {...}}; the base value may be nonzero.
WeightFunction parse_weight(const SpacePtr& space, std::string_view text);
/// {"kind": "partial", "values": {...}} over a domain containing the base.
PartialFunction parse_partial(const SpacePtr& space, std::string_view text);

// Serializers. Output is canonical: sorted keys, two-space indent, rationals as
// strings, trailing newline.

std::string serialize(const PointedMetricSpace& space);
std::string serialize(const FreeElement& mu);
std::string serialize(const LipFunction& f);
std::string serialize(const WeightFunction& h);
std::string serialize(const PartialFunction& f);
std::string dump(const Json& value);

Json to_json(const PointedMetricSpace& space);
Json to_json(const FreeElement& mu);
Json to_json(const LipFunction& f);
Json to_json(const WeightFunction& h);
Json to_json(const PartialFunction& f);
Json to_json(const PointedMetricSpace& space, const PointSet& points);
Json to_json(const PointedMetricSpace& space, const Molecule& m);
Json to_json(const PointedMetricSpace& space, const Decomposition& decomposition);
Json to_json(const NormCertificate& certificate);
Json to_json(const FaceReport& face);
Json to_json(const Segment& segment, const PointedMetricSpace& space);
Json to_json(const ExposednessVerdict& verdict);
Json to_json(const PerturbationWitness& witness);
Json to_json(const checks::CriterionResult& result, bool with_timing);

/// {"schema_version": 1, "command": name, "result": body}
Json report(std::string_view command, Json body);

}  // namespace lipfree::io
