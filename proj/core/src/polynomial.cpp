#include "regmaps/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "regmaps/errors.hpp"

namespace regmaps {

Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("malformed rational: '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (sgn(d) == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

VarRegistry::VarRegistry(std::vector<std::string> names) : names_(std::move(names)) {}

const std::string& VarRegistry::name(VarId id) const {
  if (id >= names_.size()) throw UnknownVariable("#" + std::to_string(id));
  return names_[id];
}

VarId VarRegistry::id_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw UnknownVariable(name);
  return static_cast<VarId>(it - names_.begin());
}

RegistryPtr make_registry(std::vector<std::string> names) {
  return std::make_shared<const VarRegistry>(std::move(names));
}

RegistryPtr make_indexed_registry(const std::string& prefix, std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
  return make_registry(std::move(names));
}

bool same_registry(const RegistryPtr& a, const RegistryPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Power> powers) {
  std::sort(powers.begin(), powers.end());
  for (const auto& [v, e] : powers) {
    if (e == 0) continue;
    if (!powers_.empty() && powers_.back().first == v) {
      powers_.back().second += e;
    } else {
      powers_.emplace_back(v, e);
    }
  }
}

Monomial Monomial::variable(VarId id, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.powers_.emplace_back(id, exponent);
  return m;
}

std::uint32_t Monomial::exponent(VarId id) const {
  auto it = std::lower_bound(powers_.begin(), powers_.end(), id,
                             [](const Power& p, VarId v) { return p.first < v; });
  return (it != powers_.end() && it->first == id) ? it->second : 0;
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (const auto& p : powers_) d += p.second;
  return d;
}

Monomial Monomial::with_exponent(VarId id, std::uint32_t exponent) const {
  Monomial m;
  m.powers_.reserve(powers_.size() + 1);
  bool placed = false;
  for (const auto& p : powers_) {
    if (!placed && p.first >= id) {
      if (exponent > 0) m.powers_.emplace_back(id, exponent);
      placed = true;
      if (p.first == id) continue;
    }
    m.powers_.push_back(p);
  }
  if (!placed && exponent > 0) m.powers_.emplace_back(id, exponent);
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.powers_.reserve(a.powers_.size() + b.powers_.size());
  auto i = a.powers_.begin();
  auto j = b.powers_.begin();
  while (i != a.powers_.end() || j != b.powers_.end()) {
    if (j == b.powers_.end() || (i != a.powers_.end() && i->first < j->first)) {
      m.powers_.push_back(*i++);
    } else if (i == a.powers_.end() || j->first < i->first) {
      m.powers_.push_back(*j++);
    } else {
      m.powers_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return m;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& [v, e] : powers_) {
    h ^= (static_cast<std::size_t>(v) << 32) | e;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool grevlex_less(const Monomial& a, const Monomial& b) {
  auto da = a.degree();
  auto db = b.degree();
  if (da != db) return da < db;
  const auto& pa = a.powers();
  const auto& pb = b.powers();
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(pa.size()) - 1;
  std::ptrdiff_t j = static_cast<std::ptrdiff_t>(pb.size()) - 1;
  while (i >= 0 || j >= 0) {
    if (i >= 0 && j >= 0 && pa[i].first == pb[j].first) {
      if (pa[i].second != pb[j].second) return pa[i].second > pb[j].second;
      --i;
      --j;
    } else if (j < 0 || (i >= 0 && pa[i].first > pb[j].first)) {
      // a carries the later variable, b does not
      return true;
    } else {
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(RegistryPtr registry) : registry_(std::move(registry)) {}

Polynomial::Polynomial(RegistryPtr registry, std::vector<Term> terms)
    : registry_(std::move(registry)), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    for (const auto& [v, e] : t.monomial.powers()) {
      if (v >= registry_->size()) throw UnknownVariable("#" + std::to_string(v));
    }
  }
  canonicalize();
}

Polynomial Polynomial::constant(RegistryPtr registry, const Rational& value) {
  Polynomial p(std::move(registry));
  if (sgn(value) != 0) p.terms_.push_back({Monomial{}, value});
  return p;
}

Polynomial Polynomial::variable(RegistryPtr registry, VarId id) {
  if (id >= registry->size()) throw UnknownVariable("#" + std::to_string(id));
  Polynomial p(std::move(registry));
  p.terms_.push_back({Monomial::variable(id), Rational(1)});
  return p;
}

Polynomial Polynomial::variable(RegistryPtr registry, const std::string& name) {
  VarId id = registry->id_of(name);
  return variable(std::move(registry), id);
}

void Polynomial::canonicalize() {
  for (auto& t : terms_) t.coeff.canonicalize();
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return grevlex_less(b.monomial, a.monomial); });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().monomial == t.monomial) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return sgn(t.coeff) == 0; });
  terms_ = std::move(merged);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

Rational Polynomial::constant_term() const {
  // The constant monomial is the smallest, so it sits last.
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return 0;
}

std::uint64_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

std::uint32_t Polynomial::degree_in(VarId id) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.exponent(id));
  return d;
}

std::vector<VarId> Polynomial::variables() const {
  std::vector<VarId> vars;
  for (const auto& t : terms_) {
    for (const auto& p : t.monomial.powers()) vars.push_back(p.first);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_) {
    if (t.monomial == m) return t.coeff;
  }
  return 0;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

void require_same(const Polynomial& a, const Polynomial& b) {
  if (!same_registry(a.registry(), b.registry())) throw RegistryMismatch();
}

// Merges two descending term lists; sign selects addition or subtraction.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && grevlex_less(j->monomial, i->monomial))) {
      out.push_back(*i++);
    } else if (i == a.end() || grevlex_less(i->monomial, j->monomial)) {
      out.push_back(negate_b ? Term{j->monomial, -j->coeff} : *j);
      ++j;
    } else {
      Rational c = negate_b ? Rational(i->coeff - j->coeff) : Rational(i->coeff + j->coeff);
      if (sgn(c) != 0) out.push_back({i->monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same(*this, other);
  terms_ = merge_terms(terms_, other.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same(*this, other);
  terms_ = merge_terms(terms_, other.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  Polynomial r(a.registry_);
  if (a.is_zero() || b.is_zero()) return r;
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      auto [it, inserted] = acc.try_emplace(s.monomial * t.monomial, s.coeff * t.coeff);
      if (!inserted) it->second += s.coeff * t.coeff;
    }
  }
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (sgn(c) != 0) r.terms_.push_back({m, std::move(c)});
  }
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& x, const Term& y) { return grevlex_less(y.monomial, x.monomial); });
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (sgn(scalar) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= scalar;
  }
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return same_registry(a.registry_, b.registry_) && a.terms_ == b.terms_;
}

Polynomial Polynomial::rebased(RegistryPtr registry) const {
  return Polynomial(std::move(registry), terms_);
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial pow(const Polynomial& p, unsigned exponent) {
  Polynomial result = Polynomial::constant(p.registry(), 1);
  Polynomial base = p;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial differentiate(const Polynomial& p, VarId v) {
  if (v >= p.registry()->size()) throw UnknownVariable("#" + std::to_string(v));
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    auto e = t.monomial.exponent(v);
    if (e == 0) continue;
    out.push_back({t.monomial.with_exponent(v, e - 1), t.coeff * e});
  }
  return Polynomial(p.registry(), std::move(out));
}

namespace {

template <class Lookup>
Rational evaluate_with(const Polynomial& p, Lookup&& value_of) {
  Rational sum = 0;
  Rational prod;
  for (const auto& t : p.terms()) {
    prod = t.coeff;
    for (const auto& [v, e] : t.monomial.powers()) {
      const Rational& x = value_of(v);
      for (std::uint32_t k = 0; k < e; ++k) prod *= x;
    }
    sum += prod;
  }
  return sum;
}

}  // namespace

Rational evaluate(const Polynomial& p, const std::map<VarId, Rational>& point) {
  return evaluate_with(p, [&](VarId v) -> const Rational& {
    auto it = point.find(v);
    if (it == point.end()) throw MissingAssignment(p.registry()->name(v));
    return it->second;
  });
}

// Integer evaluation over a common denominator: with x_v = a_v / L and integer
// coefficients c_t = C * coeff_t, the value is sum_d S_d L^(D - d) / (C L^D),
// S_d collecting the degree-d terms. Avoids canonicalizing a fraction per product.
Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
  if (p.is_zero()) return 0;
  Integer lcm_point = 1;
  for (const auto& t : p.terms())
    for (const auto& [v, e] : t.monomial.powers()) {
      if (v >= point.size()) throw MissingAssignment(p.registry()->name(v));
      mpz_lcm(lcm_point.get_mpz_t(), lcm_point.get_mpz_t(), point[v].get_den_mpz_t());
    }
  Integer lcm_coeff = 1;
  for (const auto& t : p.terms()) mpz_lcm(lcm_coeff.get_mpz_t(), lcm_coeff.get_mpz_t(), t.coeff.get_den_mpz_t());

  const std::uint64_t top = p.total_degree();
  std::vector<Integer> by_degree(top + 1, 0);
  std::vector<std::vector<Integer>> powers(point.size());
  Integer prod;
  for (const auto& t : p.terms()) {
    prod = t.coeff.get_num() * (lcm_coeff / t.coeff.get_den());
    std::uint64_t deg = 0;
    for (const auto& [v, e] : t.monomial.powers()) {
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(point[v].get_num() * (lcm_point / point[v].get_den()));
      while (cache.size() < e) cache.push_back(cache.back() * cache.front());
      prod *= cache[e - 1];
      deg += e;
    }
    by_degree[deg] += prod;
  }
  Integer num = 0;
  for (std::uint64_t d = 0; d <= top; ++d) num = num * lcm_point + by_degree[d];
  Integer den;
  mpz_pow_ui(den.get_mpz_t(), lcm_point.get_mpz_t(), top);
  Rational value(num, den * lcm_coeff);
  value.canonicalize();
  return value;
}

double evaluate_float(const Polynomial& p, std::span<const double> point) {
  double sum = 0.0;
  for (const auto& t : p.terms()) {
    double prod = t.coeff.get_d();
    for (const auto& [v, e] : t.monomial.powers()) {
      if (v >= point.size()) throw MissingAssignment(p.registry()->name(v));
      for (std::uint32_t k = 0; k < e; ++k) prod *= point[v];
    }
    sum += prod;
  }
  return sum;
}

Polynomial reindex(const Polynomial& p, const RegistryPtr& registry, VarId offset) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    std::vector<Monomial::Power> powers = t.monomial.powers();
    for (auto& pw : powers) pw.first += offset;
    terms.push_back({Monomial(std::move(powers)), t.coeff});
  }
  return Polynomial(registry, std::move(terms));
}

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images) {
  if (images.empty()) throw InvalidArgument("substitute: empty image list");
  auto one = Polynomial::constant(images[0].registry(), 1);
  HomogenizingSubstitution h(images, one);
  return h.apply(p, p.total_degree());
}

HomogenizingSubstitution::HomogenizingSubstitution(std::span<const Polynomial> numerators,
                                                   const Polynomial& denominator)
    : bases_(numerators.begin(), numerators.end()) {
  bases_.push_back(denominator);
  for (const auto& b : bases_) {
    if (!same_registry(b.registry(), denominator.registry())) throw RegistryMismatch();
  }
  powers_.resize(bases_.size());
}

const Polynomial& HomogenizingSubstitution::power_of(std::size_t index, std::uint32_t exponent) {
  auto& cache = powers_[index];
  if (cache.empty()) cache.push_back(Polynomial::constant(bases_[index].registry(), 1));
  while (cache.size() <= exponent) cache.push_back(cache.back() * bases_[index]);
  return cache[exponent];
}

Polynomial HomogenizingSubstitution::apply(const Polynomial& p, std::uint64_t degree) {
  const std::size_t den_index = bases_.size() - 1;
  if (degree < p.total_degree()) throw InvalidArgument("homogenizing degree below polynomial degree");
  Polynomial result(bases_[den_index].registry());
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(result.registry(), t.coeff);
    for (const auto& [v, e] : t.monomial.powers()) {
      if (v >= den_index) throw InvalidArgument("substitution has no image for variable #" + std::to_string(v));
      term *= power_of(v, e);
    }
    auto rest = degree - t.monomial.degree();
    if (rest > 0) term *= power_of(den_index, static_cast<std::uint32_t>(rest));
    result += term;
  }
  return result;
}

Polynomial SphereBlock::relation(const RegistryPtr& registry) const {
  std::vector<Term> terms;
  for (VarId v : vars) terms.push_back({Monomial::variable(v, 2), Rational(1)});
  terms.push_back({Monomial{}, Rational(-1)});
  return Polynomial(registry, std::move(terms));
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    c = abs(c);
    bool unit = (c == 1);
    if (!unit || t.monomial.is_one()) os << c.get_str();
    bool need_star = !unit;
    for (const auto& [v, e] : t.monomial.powers()) {
      if (need_star) os << "*";
      os << p.registry()->name(v);
      if (e > 1) os << "^" << e;
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

}  // namespace regmaps
