#pragma once

#include <cstdint>
#include <vector>

#include "regmaps/rational_map.hpp"

namespace regmaps {

struct WindingResult {
  long winding = 0;
  double turns = 0.0;  // accumulated angle / 2pi
  std::size_t steps = 0;
  json to_json() const;
};

// Degree of a self-map of S^1 by angle accumulation over a uniform partition,
// refined until every step turns by less than pi/2. Throws NumericalFailure when
// the denominator vanishes near a partition point or refinement does not settle.
WindingResult winding_number(const RationalMap& f, std::size_t initial_steps = 256,
                             std::size_t max_steps = std::size_t{1} << 22);
long winding(const RationalMap& f);

struct DegreeEstimate {
  double raw = 0.0;
  long rounded = 0;
  double half_width = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t resample_count = 0;
  bool inconclusive = true;
  json to_json() const;
};

// Monte Carlo mean of det(B_{f(x)}^T Df(x) B_x) over uniform x on S^n, n >= 2.
// Each sample index draws from its own stream derived from (seed, index) and the
// values are summed in index order, so the result does not depend on `threads`
// (0 = hardware concurrency).
DegreeEstimate degree_mc(const RationalMap& f, std::size_t samples, std::uint64_t seed, unsigned threads = 0);

// Orthonormal basis of the tangent space at unit x (columns of an (n+1) x n
// matrix, row-major), oriented so that det[x, B] > 0.
std::vector<double> tangent_frame(std::span<const double> x);

struct RegularValueReport {
  std::vector<Rational> value;
  std::size_t expected_rank = 0;
  std::vector<std::size_t> ranks;
  bool regular = false;
  json to_json() const;
};

// Exact rank of the differential at each fiber point, restricted to the domain
// tangent space and read in the codomain tangent space at `value`. Throws
// InvalidArgument when a point does not map exactly to `value`.
RegularValueReport regular_value_probe(const RationalMap& f, const std::vector<PointOnVariety>& fiber,
                                       const std::vector<Rational>& value);

// Number of 0 < i <= t with i = 0, 1, 2, 4 (mod 8).
std::size_t phi_count(std::size_t t);

struct RadonHurwitzQuery {
  std::size_t p = 0;
  std::size_t phi = 0;
  std::uint64_t a_p = 0;
  json to_json() const;
};
// a_p = 2^phi(p - 1). Throws InvalidArgument for p = 0 or when a_p overflows 64 bits.
RadonHurwitzQuery radon_hurwitz(std::size_t p);

struct CodimPairVerdict {
  std::size_t m = 0;
  std::size_t k = 0;
  std::uint64_t a = 0;  // a_{m+2}
  bool congruent = false;  // k = -1 (mod a_{m+2})
  json to_json() const;
};
// Requires m >= 1 and k > m + 1.
CodimPairVerdict check_codim_pair(std::size_t m, std::size_t k);

}  // namespace regmaps
