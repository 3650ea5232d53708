#include "regmaps/rational_map.hpp"

#include <algorithm>

#include "regmaps/errors.hpp"

namespace regmaps {

RationalMap::RationalMap(VarietyPtr domain, VarietyPtr codomain, std::vector<Polynomial> numerators,
                         Polynomial denominator, std::string excluded)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      numerators_(std::move(numerators)),
      denominator_(std::move(denominator)),
      excluded_(std::move(excluded)) {
  if (numerators_.size() != codomain_->ambient_dim()) {
    throw InvalidArgument("map into " + codomain_->name() + " needs " + std::to_string(codomain_->ambient_dim()) +
                          " coordinates, got " + std::to_string(numerators_.size()));
  }
  const auto& reg = domain_->registry();
  if (!same_registry(denominator_.registry(), reg)) throw RegistryMismatch();
  for (const auto& n : numerators_) {
    if (!same_registry(n.registry(), reg)) throw RegistryMismatch();
  }
  if (normal_form(denominator_, domain_->sphere_blocks()).is_zero()) {
    throw DenominatorZero("denominator vanishes identically on " + domain_->name());
  }
}

RationalMap& RationalMap::with_excluded_points(std::vector<std::vector<Rational>> points) {
  excluded_points_ = std::move(points);
  return *this;
}

RationalMap& RationalMap::with_positivity_note(std::string note) {
  positivity_note_ = std::move(note);
  return *this;
}

RationalMap& RationalMap::with_label(std::string label) {
  label_ = std::move(label);
  return *this;
}

std::uint64_t RationalMap::max_degree() const {
  std::uint64_t d = denominator_.total_degree();
  for (const auto& n : numerators_) d = std::max(d, n.total_degree());
  return d;
}

// ---------------------------------------------------------------- MatrixMap

MatrixMap::MatrixMap(RationalMap base, std::size_t rows, std::size_t cols, bool complex_entries)
    : base_(std::move(base)), rows_(rows), cols_(cols), complex_(complex_entries) {
  if (rows_ * cols_ * (complex_ ? 2 : 1) != base_.codomain()->ambient_dim()) {
    throw InvalidArgument("matrix shape does not match the codomain dimension");
  }
}

const Polynomial& MatrixMap::entry(std::size_t i, std::size_t j) const {
  if (complex_) throw InvalidArgument("entry() on a complex matrix map; use complex_entry()");
  return base_.numerators().at(i * cols_ + j);
}

ComplexPolynomial MatrixMap::complex_entry(std::size_t i, std::size_t j) const {
  if (!complex_) return {base_.numerators().at(i * cols_ + j), Polynomial(base_.domain()->registry())};
  auto e = 2 * (i * cols_ + j);
  return {base_.numerators().at(e), base_.numerators().at(e + 1)};
}

RationalMatrix MatrixMap::evaluate_real(std::span<const Rational> point) const {
  if (complex_) throw InvalidArgument("evaluate_real on a complex matrix map");
  return RationalMatrix(rows_, cols_, evaluate_coordinates(base_, point));
}

GaussianMatrix MatrixMap::evaluate_complex(std::span<const Rational> point) const {
  auto c = evaluate_coordinates(base_, point);
  GaussianMatrix m(rows_, cols_);
  for (std::size_t e = 0; e < rows_ * cols_; ++e) {
    m(e / cols_, e % cols_) = complex_ ? GaussianRational(c[2 * e], c[2 * e + 1]) : GaussianRational(c[e]);
  }
  return m;
}

// ---------------------------------------------------------------- constructors

RationalMap identity_map(const VarietyPtr& v) {
  std::vector<Polynomial> coords;
  for (VarId i = 0; i < v->ambient_dim(); ++i) coords.push_back(Polynomial::variable(v->registry(), i));
  return RationalMap(v, v, std::move(coords), Polynomial::constant(v->registry(), 1)).with_label("identity");
}

RationalMap constant_map(const VarietyPtr& domain, const PointOnVariety& value) {
  std::vector<Polynomial> coords;
  for (const auto& c : value.coordinates()) coords.push_back(Polynomial::constant(domain->registry(), c));
  return RationalMap(domain, value.variety(), std::move(coords), Polynomial::constant(domain->registry(), 1))
      .with_label("constant");
}

RationalMap linear_map(const VarietyPtr& domain, const VarietyPtr& codomain, const RationalMatrix& matrix) {
  if (matrix.rows() != codomain->ambient_dim() || matrix.cols() != domain->ambient_dim()) {
    throw InvalidArgument("linear map matrix shape does not match the varieties");
  }
  std::vector<Polynomial> coords;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      if (sgn(matrix(i, j)) != 0) terms.push_back({Monomial::variable(static_cast<VarId>(j)), matrix(i, j)});
    }
    coords.emplace_back(domain->registry(), std::move(terms));
  }
  return RationalMap(domain, codomain, std::move(coords), Polynomial::constant(domain->registry(), 1));
}

namespace {

// Positive rational c with every coefficient of every polynomial in Z/c
// having coprime integer content.
Rational common_content(const std::vector<const Polynomial*>& polys) {
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto* p : polys) {
    for (const auto& t : p->terms()) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
  }
  if (sgn(num_gcd) == 0) return 1;
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

RationalMap rebuild(const RationalMap& like, VarietyPtr domain, VarietyPtr codomain, std::vector<Polynomial> nums,
                    Polynomial den, std::string excluded) {
  const auto& blocks = domain->sphere_blocks();
  for (auto& n : nums) n = normal_form(n, blocks);
  den = normal_form(den, blocks);
  if (den.is_zero()) throw DenominatorZero("denominator vanishes identically on " + domain->name());
  std::vector<const Polynomial*> all;
  for (const auto& n : nums) all.push_back(&n);
  all.push_back(&den);
  Rational c = common_content(all);
  if (c != 1) {
    Rational inv = 1 / c;
    for (auto& n : nums) n *= inv;
    den *= inv;
  }
  RationalMap out(std::move(domain), std::move(codomain), std::move(nums), std::move(den), std::move(excluded));
  out.with_label(like.label());
  return out;
}

}  // namespace

RationalMap simplify(const RationalMap& f) {
  RationalMap out = rebuild(f, f.domain(), f.codomain(), f.numerators(), f.denominator(), f.excluded());
  out.with_excluded_points(f.excluded_points()).with_positivity_note(f.positivity_note());
  return out;
}

RationalMap compose(const RationalMap& f, const RationalMap& g) {
  if (!same_variety(*g.codomain(), *f.domain())) throw VarietyMismatch(f.domain()->name(), g.codomain()->name());
  const auto degree = f.max_degree();
  HomogenizingSubstitution h(g.numerators(), g.denominator());
  std::vector<Polynomial> nums;
  nums.reserve(f.numerators().size());
  for (const auto& n : f.numerators()) nums.push_back(h.apply(n, degree));
  Polynomial den = h.apply(f.denominator(), degree);

  std::string excluded;
  if (g.excluded() == "none" && f.excluded() == "none") {
    excluded = "none";
  } else {
    excluded = "excluded locus of inner map (" + g.excluded() + ") and preimage of (" + f.excluded() + ")";
  }
  std::string label = f.label().empty() || g.label().empty() ? "" : f.label() + " o " + g.label();
  RationalMap out = rebuild(f, g.domain(), f.codomain(), std::move(nums), std::move(den), std::move(excluded));
  out.with_label(label);
  return out;
}

RationalMap pair_map(const RationalMap& f, const RationalMap& g, const VarietyPtr& product_codomain) {
  if (!same_variety(*f.domain(), *g.domain())) throw VarietyMismatch(f.domain()->name(), g.domain()->name());
  VarietyPtr cod = product_codomain ? product_codomain : product({f.codomain(), g.codomain()});
  std::vector<Polynomial> nums;
  for (const auto& n : f.numerators()) nums.push_back(n * g.denominator());
  for (const auto& n : g.numerators()) nums.push_back(n * f.denominator());
  Polynomial den = f.denominator() * g.denominator();
  std::string excluded = f.excluded() == "none" && g.excluded() == "none"
                             ? "none"
                             : "(" + f.excluded() + ") or (" + g.excluded() + ")";
  return rebuild(f, f.domain(), std::move(cod), std::move(nums), std::move(den), std::move(excluded));
}

RationalMap cartesian_map(const RationalMap& f, const RationalMap& g, const VarietyPtr& product_domain,
                          const VarietyPtr& product_codomain) {
  if (product_domain->ambient_dim() != f.domain()->ambient_dim() + g.domain()->ambient_dim()) {
    throw InvalidArgument("product domain dimension does not match the factors");
  }
  const auto& reg = product_domain->registry();
  const auto offset = static_cast<VarId>(f.domain()->ambient_dim());
  std::vector<Polynomial> nums;
  Polynomial fd = reindex(f.denominator(), reg, 0);
  Polynomial gd = reindex(g.denominator(), reg, offset);
  for (const auto& n : f.numerators()) nums.push_back(reindex(n, reg, 0) * gd);
  for (const auto& n : g.numerators()) nums.push_back(reindex(n, reg, offset) * fd);
  std::string excluded = f.excluded() == "none" && g.excluded() == "none"
                             ? "none"
                             : "first factor in (" + f.excluded() + ") or second factor in (" + g.excluded() + ")";
  return rebuild(f, product_domain, product_codomain, std::move(nums), fd * gd, std::move(excluded));
}

// ---------------------------------------------------------------- evaluation

std::vector<Rational> evaluate_coordinates(const RationalMap& f, std::span<const Rational> point) {
  if (point.size() != f.domain()->ambient_dim()) {
    throw InvalidArgument("point has " + std::to_string(point.size()) + " coordinates, domain " +
                          f.domain()->name() + " needs " + std::to_string(f.domain()->ambient_dim()));
  }
  Rational d = evaluate(f.denominator(), point);
  if (sgn(d) == 0) throw DenominatorZero("denominator vanishes at the point (excluded locus: " + f.excluded() + ")");
  std::vector<Rational> out;
  out.reserve(f.numerators().size());
  for (const auto& n : f.numerators()) out.push_back(evaluate(n, point) / d);
  return out;
}

PointOnVariety evaluate_map(const RationalMap& f, const PointOnVariety& a) {
  if (!same_variety(*a.variety(), *f.domain())) throw VarietyMismatch(f.domain()->name(), a.variety()->name());
  auto coords = evaluate_coordinates(f, a.coordinates());
  try {
    return PointOnVariety(f.codomain(), std::move(coords));
  } catch (const CodomainViolation& e) {
    throw CodomainViolation(std::string("image leaves the codomain: ") + e.what());
  }
}

std::optional<std::vector<double>> evaluate_map_float(const RationalMap& f, std::span<const double> point) {
  double d = evaluate_float(f.denominator(), point);
  if (d == 0.0) return std::nullopt;
  std::vector<double> out;
  out.reserve(f.numerators().size());
  for (const auto& n : f.numerators()) out.push_back(evaluate_float(n, point) / d);
  return out;
}

SymbolicJacobian jacobian(const RationalMap& f) {
  const auto& den = f.denominator();
  SymbolicJacobian j{f.numerators().size(), f.domain()->ambient_dim(), {}, den * den};
  std::vector<Polynomial> dden;
  for (VarId v = 0; v < j.inputs; ++v) dden.push_back(differentiate(den, v));
  for (const auto& n : f.numerators()) {
    for (VarId v = 0; v < j.inputs; ++v) j.numerators.push_back(differentiate(n, v) * den - n * dden[v]);
  }
  return j;
}

RationalMatrix SymbolicJacobian::evaluate(std::span<const Rational> point) const {
  Rational d = regmaps::evaluate(denominator, point);
  if (sgn(d) == 0) throw DenominatorZero("Jacobian undefined: denominator vanishes at the point");
  RationalMatrix m(outputs, inputs);
  for (std::size_t i = 0; i < outputs; ++i)
    for (std::size_t k = 0; k < inputs; ++k) m(i, k) = regmaps::evaluate(numerators[i * inputs + k], point) / d;
  return m;
}

// ---------------------------------------------------------------- JSON

json to_json(std::span<const Rational> point) {
  json a = json::array();
  for (const auto& c : point) a.push_back(to_fraction_string(c));
  return a;
}

json to_json(const RationalMap& f) {
  json nums = json::array();
  for (const auto& n : f.numerators()) nums.push_back(to_json(n));
  json j = {{"domain", f.domain()->name()},
            {"codomain", f.codomain()->name()},
            {"numerators", std::move(nums)},
            {"denominator", to_json(f.denominator())},
            {"excluded", f.excluded()}};
  return j;
}

json to_json(const MatrixMap& f) {
  json j = to_json(f.base());
  j["rows"] = f.rows();
  j["cols"] = f.cols();
  j["complex"] = f.complex_entries();
  return j;
}

namespace {

VarietyPtr resolve_variety(const json& j, const char* key, const std::vector<VarietyPtr>& varieties) {
  if (!j.contains(key) || !j[key].is_string()) throw ParseError(std::string("map JSON needs string \"") + key + "\"");
  auto name = j[key].get<std::string>();
  for (const auto& v : varieties) {
    if (v->name() == name) return v;
  }
  return variety_by_name(name);
}

}  // namespace

RationalMap rational_map_from_json(const json& j, const std::vector<VarietyPtr>& varieties) {
  if (!j.is_object()) throw ParseError("map JSON must be an object");
  auto domain = resolve_variety(j, "domain", varieties);
  auto codomain = resolve_variety(j, "codomain", varieties);
  if (!j.contains("numerators") || !j["numerators"].is_array() || !j.contains("denominator")) {
    throw ParseError("map JSON needs \"numerators\" (array) and \"denominator\"");
  }
  std::vector<Polynomial> nums;
  for (const auto& n : j["numerators"]) nums.push_back(polynomial_from_json(n, domain->registry()));
  auto den = polynomial_from_json(j["denominator"], domain->registry());
  std::string excluded = j.value("excluded", std::string("none"));
  try {
    return RationalMap(domain, codomain, std::move(nums), std::move(den), std::move(excluded));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

MatrixMap matrix_map_from_json(const json& j, const std::vector<VarietyPtr>& varieties) {
  auto base = rational_map_from_json(j, varieties);
  if (!j.contains("rows") || !j.contains("cols")) throw ParseError("matrix map JSON needs \"rows\" and \"cols\"");
  try {
    return MatrixMap(std::move(base), j["rows"].get<std::size_t>(), j["cols"].get<std::size_t>(),
                     j.value("complex", false));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace regmaps
