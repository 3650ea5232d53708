#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "regmaps/linalg.hpp"
#include "regmaps/polynomial.hpp"
#include "regmaps/serialize.hpp"

namespace regmaps {

// Derives an independent 64-bit stream seed from (seed, index) (splitmix64 finalizer).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

enum class SamplerKind { kNone, kAffine, kSphere, kProduct, kSpecialOrthogonal, kUnitary, kSpecialUnitary };

struct SamplerOptions {
  // Bound on |numerator| and denominator of every random rational parameter.
  std::uint64_t height = 1000;
  // Scales every parameter; values below 1 keep group samples near the identity.
  Rational scale = 1;
};

class Variety;
using VarietyPtr = std::shared_ptr<const Variety>;

// Real algebraic set embedded in R^ambient_dim, with its defining relations.
class Variety {
 public:
  Variety(std::string name, RegistryPtr registry, std::vector<Polynomial> relations,
          std::vector<SphereBlock> blocks, SamplerKind sampler, std::size_t parameter,
          std::vector<VarietyPtr> factors = {});

  const std::string& name() const { return name_; }
  const RegistryPtr& registry() const { return registry_; }
  std::size_t ambient_dim() const { return registry_->size(); }
  const std::vector<Polynomial>& relations() const { return relations_; }
  const std::vector<SphereBlock>& sphere_blocks() const { return blocks_; }
  SamplerKind sampler() const { return sampler_; }
  // n of R^n, S^n, SO(n); k of U(k), SU(k).
  std::size_t parameter() const { return parameter_; }
  const std::vector<VarietyPtr>& factors() const { return factors_; }

  // True when every relation is a sphere-block relation, so the block
  // rewriter decides ideal membership.
  bool reducible_by_blocks() const { return reducible_by_blocks_; }

 private:
  std::string name_;
  RegistryPtr registry_;
  std::vector<Polynomial> relations_;
  std::vector<SphereBlock> blocks_;
  SamplerKind sampler_;
  std::size_t parameter_;
  std::vector<VarietyPtr> factors_;
  bool reducible_by_blocks_;
};

// Varieties compare by name and ambient dimension.
bool same_variety(const Variety& a, const Variety& b);

VarietyPtr affine_space(std::size_t n, const std::string& prefix = "X");
// S^n in R^{n+1}, coordinates prefix1..prefix(n+1).
VarietyPtr sphere(std::size_t n, const std::string& prefix = "x");
// Variables of all factors concatenated; names must not clash.
VarietyPtr product(std::vector<VarietyPtr> factors);
// Entries g{i}_{j}, row-major.
VarietyPtr special_orthogonal(std::size_t n);
// Entry (i,j) stored as a{i}_{j} (real part) followed by b{i}_{j} (imaginary part), row-major.
VarietyPtr unitary(std::size_t k);
VarietyPtr special_unitary(std::size_t k);
// Parses "R^n", "S^n", "SO(n)", "U(k)", "SU(k)" and products joined by 'x' ("S^1xS^1").
VarietyPtr variety_by_name(const std::string& name);

// Determinant of a square matrix of polynomials (Leibniz expansion).
Polynomial polynomial_determinant(const std::vector<Polynomial>& entries, std::size_t n);
// Complex entries of a realified k x k matrix whose coordinates start at offset.
std::vector<ComplexPolynomial> complex_matrix_entries(const RegistryPtr& registry, std::size_t k,
                                                      std::size_t offset = 0);
ComplexPolynomial complex_determinant(const std::vector<ComplexPolynomial>& entries, std::size_t n);

// Exact point; construction checks every relation vanishes.
class PointOnVariety {
 public:
  // Throws CodomainViolation when a relation does not vanish.
  PointOnVariety(VarietyPtr variety, std::vector<Rational> coordinates);

  const VarietyPtr& variety() const { return variety_; }
  const std::vector<Rational>& coordinates() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::vector<double> to_doubles() const;

  friend bool operator==(const PointOnVariety& a, const PointOnVariety& b) { return a.coords_ == b.coords_; }

 private:
  VarietyPtr variety_;
  std::vector<Rational> coords_;
};

// e = (1, 0, ..., 0) and -e on S^n.
PointOnVariety base_point(const VarietyPtr& sphere_variety);
PointOnVariety antipode_of_base_point(const VarietyPtr& sphere_variety);

// Uniform random rational with |numerator| <= height and 1 <= denominator <= height.
Rational random_rational(std::mt19937_64& rng, std::uint64_t height);

// Exact point on S^n from the inverse stereographic image of params (size n).
std::vector<Rational> sphere_point_from_parameters(std::span<const Rational> params);

RationalMatrix random_skew_symmetric(std::mt19937_64& rng, std::size_t n, const SamplerOptions& options);
GaussianMatrix random_skew_hermitian(std::mt19937_64& rng, std::size_t k, const SamplerOptions& options);

// Row-major real coordinates of a matrix / realified complex matrix as used by
// the SO(n) and U(k) varieties.
std::vector<Rational> flatten(const RationalMatrix& m);
std::vector<Rational> flatten(const GaussianMatrix& m);
RationalMatrix unflatten_real(std::span<const Rational> coords, std::size_t n);
GaussianMatrix unflatten_complex(std::span<const Rational> coords, std::size_t k);

// Deterministic exact point for (variety, seed). Throws NoSampler.
PointOnVariety sample_point(const VarietyPtr& variety, std::uint64_t seed, const SamplerOptions& options = {});

json to_json(const Variety& v);
VarietyPtr variety_from_json(const json& j);
// {"varieties": [...]} registry file helpers.
json variety_registry_json(const std::vector<VarietyPtr>& varieties);
std::vector<VarietyPtr> varieties_from_registry_json(const json& j);

}  // namespace regmaps
