#include "regmaps/float_eval.hpp"

#include "regmaps/errors.hpp"

namespace regmaps {

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : arity_(p.registry()->size()) {
  terms_.reserve(p.size());
  for (const auto& t : p.terms()) {
    auto first = static_cast<std::uint32_t>(factors_.size());
    for (const auto& pw : t.monomial.powers()) factors_.push_back(pw);
    terms_.push_back({t.coeff.get_d(), first, static_cast<std::uint32_t>(t.monomial.powers().size())});
  }
}

double CompiledPolynomial::operator()(std::span<const double> point) const {
  if (point.size() < arity_) throw MissingAssignment("#" + std::to_string(point.size()));
  double sum = 0.0;
  for (const auto& t : terms_) {
    double prod = t.coeff;
    for (std::uint32_t k = t.first; k < t.first + t.count; ++k) {
      const auto [v, e] = factors_[k];
      for (std::uint32_t r = 0; r < e; ++r) prod *= point[v];
    }
    sum += prod;
  }
  return sum;
}

CompiledRationalMap::CompiledRationalMap(std::span<const Polynomial> numerators, const Polynomial& denominator)
    : inputs_(denominator.registry()->size()), denominator_(denominator) {
  for (const auto& n : numerators) {
    numerators_.emplace_back(n);
    for (VarId j = 0; j < inputs_; ++j) numerator_partials_.emplace_back(differentiate(n, j));
  }
  for (VarId j = 0; j < inputs_; ++j) denominator_partials_.emplace_back(differentiate(denominator, j));
}

double CompiledRationalMap::evaluate(std::span<const double> x, std::span<double> out) const {
  const double d = denominator_(x);
  for (std::size_t i = 0; i < numerators_.size(); ++i) out[i] = numerators_[i](x) / d;
  return d;
}

double CompiledRationalMap::jacobian(std::span<const double> x, std::span<double> out) const {
  const double d = denominator_(x);
  std::vector<double> dd(inputs_);
  for (std::size_t j = 0; j < inputs_; ++j) dd[j] = denominator_partials_[j](x);
  for (std::size_t i = 0; i < numerators_.size(); ++i) {
    const double n = numerators_[i](x);
    for (std::size_t j = 0; j < inputs_; ++j) {
      // (N' D - N D') / D^2
      out[i * inputs_ + j] = (numerator_partials_[i * inputs_ + j](x) * d - n * dd[j]) / (d * d);
    }
  }
  return d;
}

}  // namespace regmaps
