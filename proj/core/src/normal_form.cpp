#include <map>
#include <set>

#include "regmaps/errors.hpp"
#include "regmaps/polynomial.hpp"

namespace regmaps {

namespace {

void check_blocks(std::span<const SphereBlock> blocks, const RegistryPtr& registry) {
  std::set<VarId> seen;
  for (const auto& b : blocks) {
    if (b.vars.empty()) throw InvalidArgument("empty sphere block");
    for (VarId v : b.vars) {
      if (v >= registry->size()) throw UnknownVariable("#" + std::to_string(v));
      if (!seen.insert(v).second) throw OverlappingBlocks();
    }
  }
}

Polynomial reduce_block(const Polynomial& p, const SphereBlock& block) {
  const auto& reg = p.registry();
  const VarId d = block.distinguished();

  // v_m^2 -> 1 - sum_{i<m} v_i^2
  std::vector<Term> rule{{Monomial{}, Rational(1)}};
  for (std::size_t i = 0; i + 1 < block.vars.size(); ++i) {
    rule.push_back({Monomial::variable(block.vars[i], 2), Rational(-1)});
  }
  const Polynomial replacement(reg, std::move(rule));

  // Group terms by how many squares of v_m they carry.
  std::map<std::uint32_t, std::vector<Term>> by_half_exponent;
  for (const auto& t : p.terms()) {
    auto e = t.monomial.exponent(d);
    by_half_exponent[e / 2].push_back({t.monomial.with_exponent(d, e % 2), t.coeff});
  }

  Polynomial result(reg);
  Polynomial power = Polynomial::constant(reg, 1);
  std::uint32_t power_exp = 0;
  for (auto& [half, terms] : by_half_exponent) {
    while (power_exp < half) {
      power *= replacement;
      ++power_exp;
    }
    result += Polynomial(reg, std::move(terms)) * power;
  }
  return result;
}

}  // namespace

Polynomial normal_form(const Polynomial& p, std::span<const SphereBlock> blocks) {
  check_blocks(blocks, p.registry());
  // Blocks are variable-disjoint, so reducing one never reintroduces another's
  // distinguished square; one pass per block reaches the fixpoint.
  Polynomial result = p;
  for (const auto& b : blocks) result = reduce_block(result, b);
  return result;
}

}  // namespace regmaps
