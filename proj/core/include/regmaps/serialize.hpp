#pragma once

#include <json.hpp>

#include <string>

#include "regmaps/polynomial.hpp"

namespace regmaps {

using json = nlohmann::json;

// Canonical form: array of {"c": "num/den", "m": [[var-id, exponent], ...]}
// with "m" sorted by var-id and terms in descending grevlex order.
json to_json(const Polynomial& p);
// Throws ParseError on schema violations or variables outside the registry.
Polynomial polynomial_from_json(const json& j, const RegistryPtr& registry);

json to_json(const VarRegistry& registry);
RegistryPtr registry_from_json(const json& j);

// Compact canonical text of to_json(p); equal polynomials give equal strings.
std::string serialize(const Polynomial& p);
Polynomial deserialize(const std::string& text, const RegistryPtr& registry);

}  // namespace regmaps
