#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regmaps/rational.hpp"

namespace regmaps {

using VarId = std::uint32_t;

// Ordered list of variable names; a variable id is an index into it.
class VarRegistry {
 public:
  explicit VarRegistry(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(VarId id) const;
  const std::vector<std::string>& names() const { return names_; }
  // Throws UnknownVariable.
  VarId id_of(const std::string& name) const;

  friend bool operator==(const VarRegistry& a, const VarRegistry& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using RegistryPtr = std::shared_ptr<const VarRegistry>;

RegistryPtr make_registry(std::vector<std::string> names);
// Registry named prefix1..prefixN (1-based, as in the usual coordinate notation).
RegistryPtr make_indexed_registry(const std::string& prefix, std::size_t count);
bool same_registry(const RegistryPtr& a, const RegistryPtr& b);

// Power product of variables. Absent variables have exponent 0; stored exponents are positive.
class Monomial {
 public:
  using Power = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  // Pairs may come in any order; zero exponents are dropped, repeated ids are summed.
  explicit Monomial(std::vector<Power> powers);
  static Monomial variable(VarId id, std::uint32_t exponent = 1);

  const std::vector<Power>& powers() const { return powers_; }
  std::uint32_t exponent(VarId id) const;
  std::uint64_t degree() const;
  bool is_one() const { return powers_.empty(); }

  Monomial with_exponent(VarId id, std::uint32_t exponent) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.powers_ == b.powers_; }

  std::size_t hash() const;

 private:
  std::vector<Power> powers_;
};

// Graded reverse-lexicographic order: true when a precedes b (a is smaller).
bool grevlex_less(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
  Monomial monomial;
  Rational coeff;
  friend bool operator==(const Term& a, const Term& b) {
    return a.monomial == b.monomial && a.coeff == b.coeff;
  }
};

// Sparse multivariate polynomial with exact rational coefficients. Terms are
// kept in descending graded reverse-lexicographic order with no zero
// coefficients, so equal polynomials have identical term lists.
class Polynomial {
 public:
  explicit Polynomial(RegistryPtr registry);
  Polynomial(RegistryPtr registry, std::vector<Term> terms);

  static Polynomial constant(RegistryPtr registry, const Rational& value);
  static Polynomial variable(RegistryPtr registry, VarId id);
  static Polynomial variable(RegistryPtr registry, const std::string& name);

  const RegistryPtr& registry() const { return registry_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::uint64_t total_degree() const;
  std::uint32_t degree_in(VarId id) const;
  std::vector<VarId> variables() const;
  // Coefficient of m, zero when absent.
  Rational coefficient(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  // Structural equality: same registry contents and same canonical terms.
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  // Same terms over a different registry with the same number of variables or more.
  Polynomial rebased(RegistryPtr registry) const;

 private:
  void canonicalize();

  RegistryPtr registry_;
  std::vector<Term> terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& p, unsigned exponent);
// Throws UnknownVariable when v is outside the registry.
Polynomial differentiate(const Polynomial& p, VarId v);

// Exact evaluation. Throws MissingAssignment for variables of p with no value.
Rational evaluate(const Polynomial& p, const std::map<VarId, Rational>& point);
// Dense variant: point[i] is the value of variable i.
Rational evaluate(const Polynomial& p, std::span<const Rational> point);
// Hardware floating point, same term traversal as the exact variant.
double evaluate_float(const Polynomial& p, std::span<const double> point);

// Moves p into registry with every variable id shifted by offset.
Polynomial reindex(const Polynomial& p, const RegistryPtr& registry, VarId offset);

// Replaces variable i of p by images[i] (all images share one registry).
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images);

// Evaluates p at numerators/denominator with denominators cleared at a fixed
// degree: returns sum c * prod numerators^e * denominator^(degree - |e|).
// Requires degree >= total_degree(p).
class HomogenizingSubstitution {
 public:
  HomogenizingSubstitution(std::span<const Polynomial> numerators, const Polynomial& denominator);
  Polynomial apply(const Polynomial& p, std::uint64_t degree);

 private:
  const Polynomial& power_of(std::size_t index, std::uint32_t exponent);

  std::vector<Polynomial> bases_;  // numerators followed by the denominator
  std::vector<std::vector<Polynomial>> powers_;
};

// The relation sum v_i^2 - 1 on an ordered set of variables; the last one is
// the distinguished variable rewritten by normal_form.
struct SphereBlock {
  std::vector<VarId> vars;

  VarId distinguished() const { return vars.back(); }
  Polynomial relation(const RegistryPtr& registry) const;
  friend bool operator==(const SphereBlock&, const SphereBlock&) = default;
};

// Reduces p modulo the sphere relations by rewriting v_m^2 -> 1 - sum_{i<m} v_i^2
// for each block's distinguished variable. Throws OverlappingBlocks.
Polynomial normal_form(const Polynomial& p, std::span<const SphereBlock> blocks);

// Pair of real polynomials standing for re + i*im. Complex variables are
// always split into real and imaginary coordinates before use.
struct ComplexPolynomial {
  Polynomial re;
  Polynomial im;

  explicit ComplexPolynomial(const RegistryPtr& registry) : re(registry), im(registry) {}
  ComplexPolynomial(Polynomial r, Polynomial i) : re(std::move(r)), im(std::move(i)) {}

  ComplexPolynomial conj() const { return {re, -im}; }
  // |z|^2 as a real polynomial.
  Polynomial norm2() const { return re * re + im * im; }

  friend ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexPolynomial operator-(const ComplexPolynomial& a) { return {-a.re, -a.im}; }
  friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexPolynomial operator*(const ComplexPolynomial& a, const Polynomial& real) {
    return {a.re * real, a.im * real};
  }
  friend ComplexPolynomial operator*(const GaussianRational& s, const ComplexPolynomial& a) {
    return {a.re * s.re - a.im * s.im, a.re * s.im + a.im * s.re};
  }
};

std::string to_string(const Polynomial& p);

}  // namespace regmaps
