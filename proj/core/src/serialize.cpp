#include "regmaps/serialize.hpp"

#include "regmaps/errors.hpp"

namespace regmaps {

json to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    json m = json::array();
    for (const auto& [v, e] : t.monomial.powers()) m.push_back({v, e});
    terms.push_back({{"c", to_fraction_string(t.coeff)}, {"m", std::move(m)}});
  }
  return terms;
}

Polynomial polynomial_from_json(const json& j, const RegistryPtr& registry) {
  if (!j.is_array()) throw ParseError("polynomial must be a JSON array of terms");
  std::vector<Term> terms;
  terms.reserve(j.size());
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("c") || !t.contains("m") || !t["c"].is_string() || !t["m"].is_array()) {
      throw ParseError("polynomial term must be an object with string \"c\" and array \"m\"");
    }
    std::vector<Monomial::Power> powers;
    for (const auto& pe : t["m"]) {
      if (!pe.is_array() || pe.size() != 2 || !pe[0].is_number_unsigned() || !pe[1].is_number_unsigned()) {
        throw ParseError("monomial entries must be [var-id, exponent] pairs of non-negative integers");
      }
      auto v = pe[0].get<std::uint64_t>();
      auto e = pe[1].get<std::uint64_t>();
      if (v >= registry->size()) throw ParseError("variable id " + std::to_string(v) + " outside registry");
      if (e == 0 || e > UINT32_MAX) throw ParseError("monomial exponents must be positive");
      powers.emplace_back(static_cast<VarId>(v), static_cast<std::uint32_t>(e));
    }
    terms.push_back({Monomial(std::move(powers)), parse_rational(t["c"].get<std::string>())});
  }
  return Polynomial(registry, std::move(terms));
}

json to_json(const VarRegistry& registry) { return registry.names(); }

RegistryPtr registry_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("variable registry must be an array of names");
  std::vector<std::string> names;
  for (const auto& n : j) {
    if (!n.is_string()) throw ParseError("variable names must be strings");
    names.push_back(n.get<std::string>());
  }
  return make_registry(std::move(names));
}

std::string serialize(const Polynomial& p) { return to_json(p).dump(); }

Polynomial deserialize(const std::string& text, const RegistryPtr& registry) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return polynomial_from_json(j, registry);
}

}  // namespace regmaps
