#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regmaps/group_maps.hpp"
#include "regmaps/rational_map.hpp"

namespace regmaps {

// A resolved catalog target. Matrix-valued maps keep their matrix shape and
// J-maps keep the input family they were built from.
struct CatalogEntry {
  std::string name;
  std::string family;  // "stereo", "oplus", "s", "jmap", ..., or "file"
  std::vector<std::size_t> params;
  RationalMap map;
  std::optional<MatrixMap> matrix;
  std::optional<JMapInput> jmap;
};

// Names: stereo:n stereo-inv:n oplus:n oplus-composed:n reflect:n:j phi:k zpow:d
// antipodal:n id:n p:n p-u:k s:n s-u:k r:n r-u:k chain:m:k su-retract:k embed-u:k
// jmap:<file> jmap:identity:n:k jmap:rotation jmap:rotation2, or a path to a
// map JSON file (resolved against `varieties`). Throws ParseError for unknown
// names and InvalidArgument for out-of-range parameters.
CatalogEntry resolve(const std::string& name, const std::vector<VarietyPtr>& varieties = {});
std::vector<std::string> catalog_patterns();

struct SuiteCheck {
  std::string name;
  bool passed = false;
  json detail;
};

struct SuiteReport {
  std::vector<SuiteCheck> checks;
  bool passed() const;
  json to_json() const;
};

// Family-specific identities (e.g. the oplus norm identity and the composed-form
// equivalence for oplus, p o s = id for sections, p(r(g)) = e for retractions).
SuiteReport identity_suite(const CatalogEntry& entry, std::size_t trials, std::uint64_t seed);

// Exact probe points for the denominator check: e and the declared excluded points.
std::vector<std::vector<Rational>> denominator_probes(const RationalMap& f);

}  // namespace regmaps
