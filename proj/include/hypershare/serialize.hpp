#pragma once

#include <string>

#include "json.hpp"

#include "hypershare/entropy.hpp"
#include "hypershare/scheme.hpp"

namespace hypershare {

using Json = nlohmann::json;

// Round-trippable structured-text forms. Parsers validate shapes themselves
// and raise ParseError; semantic validation stays with the type constructors.

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json scheme_to_json(const LinearScheme& s);
LinearScheme scheme_from_json(const Json& j);

Json bundle_to_json(const ShareBundle& b);
ShareBundle bundle_from_json(const Json& j);

Json polymatroid_to_json(const PolymatroidFn& f);
PolymatroidFn polymatroid_from_json(const Json& j);

// Rationals travel as [numerator, denominator] decimal strings.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json parse_text(const std::string& text); // ParseError carries the position
std::string to_text(const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace hypershare
