#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "regmaps/polynomial.hpp"

namespace regmaps {

// Polynomial flattened for repeated hardware-float evaluation. Term order and
// multiplication order match evaluate_float.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& p);

  double operator()(std::span<const double> point) const;
  std::size_t arity() const { return arity_; }

 private:
  struct FlatTerm {
    double coeff;
    std::uint32_t first;  // index into factors_
    std::uint32_t count;
  };
  std::vector<FlatTerm> terms_;
  std::vector<std::pair<VarId, std::uint32_t>> factors_;
  std::size_t arity_ = 0;
};

// Coordinates N_i / D of a rational map together with the symbolic partials
// needed for the Jacobian, all compiled for float evaluation.
class CompiledRationalMap {
 public:
  CompiledRationalMap(std::span<const Polynomial> numerators, const Polynomial& denominator);

  std::size_t inputs() const { return inputs_; }
  std::size_t outputs() const { return numerators_.size(); }

  double denominator(std::span<const double> x) const { return denominator_(x); }
  // Writes outputs() values; returns the denominator value (image undefined when 0).
  double evaluate(std::span<const double> x, std::span<double> out) const;
  // Row-major outputs() x inputs() Jacobian of the coordinates.
  double jacobian(std::span<const double> x, std::span<double> out) const;

 private:
  std::size_t inputs_;
  std::vector<CompiledPolynomial> numerators_;
  CompiledPolynomial denominator_;
  std::vector<CompiledPolynomial> numerator_partials_;  // [i * inputs + j]
  std::vector<CompiledPolynomial> denominator_partials_;
};

}  // namespace regmaps
