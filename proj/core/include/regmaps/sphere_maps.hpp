#pragma once

#include "regmaps/rational_map.hpp"

namespace regmaps {

// Stereographic projection from -e: x -> (x2, ..., x(n+1)) / (1 + x1).
RationalMap stereo(std::size_t n);
// X -> ((1 - |X|^2), 2 X_1, ..., 2 X_n) / (1 + |X|^2).
RationalMap stereo_inv(std::size_t n);

// Domain S^n x S^n with coordinates x1..x(n+1), y1..y(n+1).
VarietyPtr sphere_pair(std::size_t n);

// Sphere addition in closed form over the shared denominator
// D = (1 + x1)(1 + y1) + 2 - 2 x1 y1 + 2 sum_{i>=2} x_i y_i.
RationalMap oplus(std::size_t n);
// The same map built as stereo_inv o (+) o (stereo x stereo).
RationalMap oplus_composed(std::size_t n);
// (X, Y) -> X + Y on R^n x R^n.
RationalMap vector_addition(std::size_t n);

// Pieces of the rational identity behind the closed form of oplus, all over S^n x S^n.
struct OplusNormTerms {
  Polynomial lhs_numerator;     // sum_{i>=2} (x_i (1+y1) + y_i (1+x1))^2, over (1+x1)^2 (1+y1)^2
  Polynomial middle_numerator;  // (1-x1^2)(1+y1)^2 + 2 sum x_i y_i (1+x1)(1+y1) + (1-y1^2)(1+x1)^2, same denominator
  Polynomial rhs_numerator;     // 2 - 2 x1 y1 + 2 sum x_i y_i, over (1+x1)(1+y1)
  Polynomial lhs_denominator;
  Polynomial rhs_denominator;
  std::vector<SphereBlock> blocks;

  // Cross-multiplied differences, before reduction.
  Polynomial lhs_minus_middle() const;
  Polynomial middle_minus_rhs() const;
  Polynomial lhs_minus_rhs() const;
};
OplusNormTerms oplus_norm_terms(std::size_t n);

// Negates coordinate `axis` (1-based, 2 <= axis <= n+1); fixes e.
RationalMap reflect(std::size_t n, std::size_t axis);
// x -> (2 x1^2 - 1, 2 x1 x2, ..., 2 x1 x(k+1)); factors through x ~ -x.
RationalMap phi_double(std::size_t k);
// x -> -x.
RationalMap antipodal(std::size_t n);
// Real and imaginary parts of (x + i y)^d; negative d uses (x - i y)^|d|.
RationalMap circle_power(long d);
// Rotation of S^1 by the rational unit vector (c, s).
RationalMap circle_rotation(const Rational& c, const Rational& s);
// x -> f(x) (+) g(x) for two maps into S^n with a common domain.
RationalMap pointwise_oplus(const RationalMap& f, const RationalMap& g);

}  // namespace regmaps
