#pragma once

// JSON forms of every artifact. Field names are stable; see README.md.
// Parsers throw MalformedInput on anything that does not fit the schema.

#include <string>

#include "json.hpp"

#include "cscheme/gap.hpp"
#include "cscheme/gap_analysis.hpp"
#include "cscheme/report.hpp"
#include "cscheme/scheme.hpp"
#include "cscheme/tree.hpp"

namespace cscheme::json {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemeFormat = "construction-scheme";
inline constexpr const char* kLabelsFormat = "tree-labels";
inline constexpr const char* kSidesFormat = "gap-sides";
inline constexpr const char* kFamilyFormat = "gap-family";
inline constexpr int kVersion = 1;

Json to_json(const FinSet& s);
FinSet fin_set_from_json(const Json& j);

Json to_json(const SchemeType& t);
SchemeType type_from_json(const Json& j);

Json to_json(const ConstructionScheme& s);
ConstructionScheme scheme_from_json(const Json& j);

Json to_json(const LabeledScheme& ls);
LabeledScheme labels_from_json(const Json& j);

/// Includes the limit family under "limit" for readers that only want (a_α, b_α).
Json to_json(const SideFamily& sf);
SideFamily sides_from_json(const Json& j);

Json to_json(const FiniteGapFamily& fam);
/// Accepts a "gap-family" document or a "gap-sides" dump (uses its limit family).
FiniteGapFamily family_from_json(const Json& j);

Json to_json(const Failure& f);
Json to_json(const Report& r);
Json to_json(const ConsequenceReport& r);
Json to_json(const TypeReport& r);

/// "format" field of a document, or empty if absent.
std::string format_of(const Json& j);

/// Canonical text form: two-space indent, trailing newline.
std::string dump(const Json& j);
/// Throws MalformedInput on syntax errors.
Json parse(const std::string& text);

}  // namespace cscheme::json
