#pragma once

#include <json.hpp>

#include <string>

namespace forge {

using Json = nlohmann::json;

/// Canonical JSON text: object keys sorted, no insignificant whitespace,
/// every floating-point number rendered with exactly six decimals.
/// Integers stay integers. Throws InvalidArgument on NaN or infinity.
std::string canonical_dump(const Json& value);

/// Rounds to the value canonical serialization will reproduce on parse.
double quantize6(double value);

/// Parses JSON text, throwing SchemaViolation at path "$" on syntax errors.
Json parse_json(std::string_view text);

}  // namespace forge
