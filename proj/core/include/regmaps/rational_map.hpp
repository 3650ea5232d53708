#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regmaps/linalg.hpp"
#include "regmaps/polynomial.hpp"
#include "regmaps/serialize.hpp"
#include "regmaps/variety.hpp"

namespace regmaps {

// Coordinates numerators[i] / denominator over the domain's variables.
// Where the denominator may vanish is declared metadata, never computed.
class RationalMap {
 public:
  // Throws RegistryMismatch, InvalidArgument (wrong coordinate count) or
  // DenominatorZero (denominator zero modulo the domain's sphere ideal).
  RationalMap(VarietyPtr domain, VarietyPtr codomain, std::vector<Polynomial> numerators, Polynomial denominator,
              std::string excluded = "none");

  const VarietyPtr& domain() const { return domain_; }
  const VarietyPtr& codomain() const { return codomain_; }
  const std::vector<Polynomial>& numerators() const { return numerators_; }
  const Polynomial& denominator() const { return denominator_; }
  const std::string& excluded() const { return excluded_; }

  // Exact points of the excluded locus, when it is finite and known.
  const std::vector<std::vector<Rational>>& excluded_points() const { return excluded_points_; }
  RationalMap& with_excluded_points(std::vector<std::vector<Rational>> points);
  // Analytic argument that the denominator is positive off the excluded locus.
  const std::string& positivity_note() const { return positivity_note_; }
  RationalMap& with_positivity_note(std::string note);
  const std::string& label() const { return label_; }
  RationalMap& with_label(std::string label);

  std::uint64_t max_degree() const;

 private:
  VarietyPtr domain_;
  VarietyPtr codomain_;
  std::vector<Polynomial> numerators_;
  Polynomial denominator_;
  std::string excluded_;
  std::vector<std::vector<Rational>> excluded_points_;
  std::string positivity_note_;
  std::string label_;
};

// A rational map whose coordinates are matrix entries in row-major order.
// Complex matrices store each entry as (real, imaginary) coordinate pairs.
class MatrixMap {
 public:
  MatrixMap(RationalMap base, std::size_t rows, std::size_t cols, bool complex_entries = false);

  const RationalMap& base() const { return base_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool complex_entries() const { return complex_; }

  const Polynomial& entry(std::size_t i, std::size_t j) const;
  ComplexPolynomial complex_entry(std::size_t i, std::size_t j) const;

  RationalMatrix evaluate_real(std::span<const Rational> point) const;
  GaussianMatrix evaluate_complex(std::span<const Rational> point) const;

 private:
  RationalMap base_;
  std::size_t rows_;
  std::size_t cols_;
  bool complex_;
};

RationalMap identity_map(const VarietyPtr& v);
// Constant map to point c of codomain.
RationalMap constant_map(const VarietyPtr& domain, const PointOnVariety& value);
// Linear map x -> matrix * x between varieties of matching ambient dimension.
RationalMap linear_map(const VarietyPtr& domain, const VarietyPtr& codomain, const RationalMatrix& matrix);

// f o g. Requires codomain(g) = domain(f). Denominators are cleared at the
// maximal coordinate degree of f, results are reduced by the domain's sphere
// blocks and divided by their common rational content.
RationalMap compose(const RationalMap& f, const RationalMap& g);
// x -> (f(x), g(x)) into codomain(f) x codomain(g) (or the given product variety).
RationalMap pair_map(const RationalMap& f, const RationalMap& g, const VarietyPtr& product_codomain);
// (x, y) -> (f(x), g(y)) between product varieties.
RationalMap cartesian_map(const RationalMap& f, const RationalMap& g, const VarietyPtr& product_domain,
                          const VarietyPtr& product_codomain);

// Reduces numerators and denominator by the domain blocks and common content.
RationalMap simplify(const RationalMap& f);

// Image coordinates without the codomain check. Throws DenominatorZero.
std::vector<Rational> evaluate_coordinates(const RationalMap& f, std::span<const Rational> point);
// Throws DenominatorZero (point in the excluded locus) or CodomainViolation.
PointOnVariety evaluate_map(const RationalMap& f, const PointOnVariety& a);
// Float image; returns std::nullopt where the denominator is zero.
std::optional<std::vector<double>> evaluate_map_float(const RationalMap& f, std::span<const double> point);

// d(N_i / D)/dx_j = (N_i' D - N_i D') / D^2, kept as numerators over D^2.
struct SymbolicJacobian {
  std::size_t outputs = 0;
  std::size_t inputs = 0;
  std::vector<Polynomial> numerators;  // row-major outputs x inputs
  Polynomial denominator;  // D^2

  RationalMatrix evaluate(std::span<const Rational> point) const;
};
SymbolicJacobian jacobian(const RationalMap& f);

// ---------------------------------------------------------------- reports

struct RelationCheck {
  std::size_t relation = 0;
  bool passed = false;
  std::string detail;
};

struct MapsIntoReport {
  bool passed = false;
  std::string method;  // "symbolic", "symbolic-affine", "sampling", "trivial"
  std::vector<RelationCheck> relations;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<std::vector<Rational>> witness;
  json to_json() const;
};

struct DenominatorReport {
  bool passed = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<Rational> minimum;
  std::vector<std::vector<Rational>> failures;  // nonpositive outside the excluded locus
  std::vector<std::vector<Rational>> excluded;  // probes inside the declared excluded locus
  std::vector<Rational> probe_values;
  std::string positivity_note;
  json to_json() const;
};

struct EqualityReport {
  bool equal = false;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t vacuous = 0;  // samples where both denominators vanish
  std::optional<std::vector<Rational>> witness;
  std::optional<std::size_t> witness_coordinate;
  std::string soundness;
  json to_json() const;
};

// Decides each codomain relation on the image: symbolically when the domain
// ideal is generated by sphere blocks (or empty), by exact sampling otherwise.
MapsIntoReport maps_into(const RationalMap& f, std::size_t trials = 20, std::uint64_t seed = 0);

// Evaluates the denominator at `samples` exact domain points plus the given
// probe points; any nonpositive value outside the declared excluded locus fails.
DenominatorReport denominator_check(const RationalMap& f, std::size_t samples, std::uint64_t seed,
                                    const std::vector<std::vector<Rational>>& probes = {});

// Cross-multiplied coordinate differences at `trials` exact domain samples.
EqualityReport equal_mod(const RationalMap& f, const RationalMap& g, std::size_t trials, std::uint64_t seed,
                         const SamplerOptions& options = {});

// ---------------------------------------------------------------- JSON

json to_json(const RationalMap& f);
json to_json(const MatrixMap& f);
// Resolves domain/codomain by name through `varieties` first, then standard names.
RationalMap rational_map_from_json(const json& j, const std::vector<VarietyPtr>& varieties = {});
MatrixMap matrix_map_from_json(const json& j, const std::vector<VarietyPtr>& varieties = {});
json to_json(std::span<const Rational> point);

}  // namespace regmaps
