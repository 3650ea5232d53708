#pragma once

#include "regmaps/rational_map.hpp"

namespace regmaps {

// SO(n) -> S^{n-1}: the first column.
RationalMap first_column(std::size_t n);
// U(k) -> S^{2k-1}: the first column read as (Re z1, Im z1, ..., Re zk, Im zk).
RationalMap first_column_u(std::size_t k);

// Section of first_column over S^{n-1} minus {-e}: the product of the
// reflections through e-perp and (a + e)-perp, entries over 1 + x1.
MatrixMap section_so(std::size_t n);
// Unitary section over S^{2k-1} minus {-e}, entries over |1 + z1|^2.
MatrixMap section_u(std::size_t k);

// g -> (s(p(g)))^T g on {g in SO(n) : p(g) != -e}; the image has first column e.
MatrixMap retract_so(std::size_t n);
// g -> (s'(p(g)))^* g on {g in U(k) : p(g) != -e}.
MatrixMap retract_u(std::size_t k);
// Composite of the retractions of the nested blocks SO(m) ⊃ SO(m-1) ⊃ ... ⊃ SO(k),
// returned as an m x m matrix in block form diag(I_{m-k}, h).
MatrixMap chain_retract(std::size_t m, std::size_t k);
// g -> g diag(conj(det g), 1, ..., 1), using det(g)^{-1} = conj(det g) on U(k).
MatrixMap su_retract(std::size_t k);
// Realification a + bi -> [[a, -b], [b, a]].
MatrixMap embed_u_in_so(std::size_t k);

// diag(I_{n - h.rows()}, h), the embedded subgroup element.
RationalMatrix embed_lower_block(const RationalMatrix& h, std::size_t n);
GaussianMatrix embed_lower_block(const GaussianMatrix& h, std::size_t n);

// f = P / Q : R^{n+1} (or S^n) -> SO(k) with f(e) = I and Q > 0 on S^n.
struct JMapInput {
  MatrixMap f;
  std::size_t n;
  std::size_t k;
};

// Throws InvalidArgument when f(e) != I, the shape is wrong, or Q is not
// positive at a sampled point of S^n.
void validate(const JMapInput& input, std::size_t q_samples = 64, std::uint64_t seed = 0);

// (x, y) -> ((Q^2 - |y|^2), 2 P^T y) / (Q^2 + |y|^2) from S^{n+k} to S^k.
RationalMap j_map(const JMapInput& input);

// f = I, Q = 1.
JMapInput jmap_identity_input(std::size_t n, std::size_t k);
// n = 1, k = 2, f = [[x1, -x2], [x2, x1]], Q = 1. Orthogonal only on S^1 itself.
JMapInput jmap_rotation_input();
// n = 1, k = 2, f = [[x1^2 - x2^2, -2 x1 x2], [2 x1 x2, x1^2 - x2^2]] / (x1^2 + x2^2),
// orthogonal on all of R^2 minus the origin.
JMapInput jmap_rotation_squared_input();

json to_json(const JMapInput& input);
JMapInput jmap_input_from_json(const json& j);

}  // namespace regmaps
