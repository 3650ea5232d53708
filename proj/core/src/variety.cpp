#include "regmaps/variety.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <set>

#include "regmaps/errors.hpp"

namespace regmaps {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Variety::Variety(std::string name, RegistryPtr registry, std::vector<Polynomial> relations,
                 std::vector<SphereBlock> blocks, SamplerKind sampler, std::size_t parameter,
                 std::vector<VarietyPtr> factors)
    : name_(std::move(name)),
      registry_(std::move(registry)),
      relations_(std::move(relations)),
      blocks_(std::move(blocks)),
      sampler_(sampler),
      parameter_(parameter),
      factors_(std::move(factors)) {
  for (const auto& r : relations_) {
    if (!same_registry(r.registry(), registry_)) throw RegistryMismatch();
  }
  std::set<VarId> used;
  for (const auto& b : blocks_) {
    for (VarId v : b.vars) {
      if (v >= registry_->size()) throw UnknownVariable("#" + std::to_string(v));
      if (!used.insert(v).second) throw OverlappingBlocks();
    }
  }
  reducible_by_blocks_ = std::all_of(relations_.begin(), relations_.end(), [&](const Polynomial& r) {
    return std::any_of(blocks_.begin(), blocks_.end(),
                       [&](const SphereBlock& b) { return b.relation(registry_) == r; });
  });
}

bool same_variety(const Variety& a, const Variety& b) {
  return a.name() == b.name() && a.ambient_dim() == b.ambient_dim();
}

VarietyPtr affine_space(std::size_t n, const std::string& prefix) {
  if (n < 1) throw InvalidArgument("R^n needs n >= 1");
  return std::make_shared<const Variety>("R^" + std::to_string(n), make_indexed_registry(prefix, n),
                                         std::vector<Polynomial>{}, std::vector<SphereBlock>{},
                                         SamplerKind::kAffine, n);
}

VarietyPtr sphere(std::size_t n, const std::string& prefix) {
  if (n < 1) throw InvalidArgument("S^n needs n >= 1");
  auto reg = make_indexed_registry(prefix, n + 1);
  SphereBlock block;
  block.vars.resize(n + 1);
  std::iota(block.vars.begin(), block.vars.end(), VarId{0});
  auto rel = block.relation(reg);
  return std::make_shared<const Variety>("S^" + std::to_string(n), reg, std::vector<Polynomial>{rel},
                                         std::vector<SphereBlock>{block}, SamplerKind::kSphere, n);
}

VarietyPtr product(std::vector<VarietyPtr> factors) {
  if (factors.size() < 2) throw InvalidArgument("a product needs at least two factors");
  std::vector<std::string> names;
  std::string name;
  for (const auto& f : factors) {
    for (const auto& n : f->registry()->names()) names.push_back(n);
    name += (name.empty() ? "" : "x") + f->name();
  }
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != names.size()) throw InvalidArgument("product factors have clashing variable names");
  auto reg = make_registry(std::move(names));

  std::vector<Polynomial> relations;
  std::vector<SphereBlock> blocks;
  VarId offset = 0;
  for (const auto& f : factors) {
    for (const auto& r : f->relations()) relations.push_back(reindex(r, reg, offset));
    for (const auto& b : f->sphere_blocks()) {
      SphereBlock shifted = b;
      for (auto& v : shifted.vars) v += offset;
      blocks.push_back(std::move(shifted));
    }
    offset += static_cast<VarId>(f->ambient_dim());
  }
  auto count = factors.size();
  return std::make_shared<const Variety>(name, reg, std::move(relations), std::move(blocks), SamplerKind::kProduct,
                                         count, std::move(factors));
}

Polynomial polynomial_determinant(const std::vector<Polynomial>& entries, std::size_t n) {
  if (entries.size() != n * n || n == 0) throw InvalidArgument("determinant needs n*n entries");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial det(entries[0].registry());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Polynomial term = Polynomial::constant(det.registry(), inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term *= entries[i * n + perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

std::vector<ComplexPolynomial> complex_matrix_entries(const RegistryPtr& registry, std::size_t k, std::size_t offset) {
  std::vector<ComplexPolynomial> out;
  out.reserve(k * k);
  for (std::size_t e = 0; e < k * k; ++e) {
    out.emplace_back(Polynomial::variable(registry, static_cast<VarId>(offset + 2 * e)),
                     Polynomial::variable(registry, static_cast<VarId>(offset + 2 * e + 1)));
  }
  return out;
}

ComplexPolynomial complex_determinant(const std::vector<ComplexPolynomial>& entries, std::size_t n) {
  if (entries.size() != n * n || n == 0) throw InvalidArgument("determinant needs n*n entries");
  const auto& reg = entries[0].re.registry();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  ComplexPolynomial det(reg);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    ComplexPolynomial term(Polynomial::constant(reg, inversions % 2 ? -1 : 1), Polynomial(reg));
    for (std::size_t i = 0; i < n; ++i) term = term * entries[i * n + perm[i]];
    det = det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

namespace {

std::string group_entry_name(const std::string& prefix, std::size_t i, std::size_t j) {
  return prefix + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

}  // namespace

VarietyPtr special_orthogonal(std::size_t n) {
  if (n < 1) throw InvalidArgument("SO(n) needs n >= 1");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) names.push_back(group_entry_name("g", i, j));
  auto reg = make_registry(std::move(names));
  std::vector<Polynomial> g;
  for (VarId v = 0; v < n * n; ++v) g.push_back(Polynomial::variable(reg, v));

  std::vector<Polynomial> relations;
  for (int pass = 0; pass < 2; ++pass) {
    // pass 0: columns orthonormal (G^T G = I); pass 1: rows (G G^T = I)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Polynomial r = Polynomial::constant(reg, i == j ? -1 : 0);
        for (std::size_t l = 0; l < n; ++l) {
          r += pass == 0 ? g[l * n + i] * g[l * n + j] : g[i * n + l] * g[j * n + l];
        }
        relations.push_back(std::move(r));
      }
  }
  relations.push_back(polynomial_determinant(g, n) - Polynomial::constant(reg, 1));
  return std::make_shared<const Variety>("SO(" + std::to_string(n) + ")", reg, std::move(relations),
                                         std::vector<SphereBlock>{}, SamplerKind::kSpecialOrthogonal, n);
}

namespace {

std::vector<Polynomial> unitary_relations(const RegistryPtr& reg, std::size_t k) {
  auto g = complex_matrix_entries(reg, k);
  std::vector<Polynomial> relations;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) {
        ComplexPolynomial r(Polynomial::constant(reg, i == j ? -1 : 0), Polynomial(reg));
        for (std::size_t l = 0; l < k; ++l) {
          r = r + (pass == 0 ? g[l * k + i].conj() * g[l * k + j] : g[i * k + l] * g[j * k + l].conj());
        }
        relations.push_back(std::move(r.re));
        if (i != j) relations.push_back(std::move(r.im));
      }
  }
  return relations;
}

RegistryPtr unitary_registry(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      names.push_back(group_entry_name("a", i, j));
      names.push_back(group_entry_name("b", i, j));
    }
  return make_registry(std::move(names));
}

}  // namespace

VarietyPtr unitary(std::size_t k) {
  if (k < 1) throw InvalidArgument("U(k) needs k >= 1");
  auto reg = unitary_registry(k);
  return std::make_shared<const Variety>("U(" + std::to_string(k) + ")", reg, unitary_relations(reg, k),
                                         std::vector<SphereBlock>{}, SamplerKind::kUnitary, k);
}

VarietyPtr special_unitary(std::size_t k) {
  if (k < 1) throw InvalidArgument("SU(k) needs k >= 1");
  auto reg = unitary_registry(k);
  auto relations = unitary_relations(reg, k);
  auto det = complex_determinant(complex_matrix_entries(reg, k), k);
  relations.push_back(det.re - Polynomial::constant(reg, 1));
  relations.push_back(det.im);
  return std::make_shared<const Variety>("SU(" + std::to_string(k) + ")", reg, std::move(relations),
                                         std::vector<SphereBlock>{}, SamplerKind::kSpecialUnitary, k);
}

VarietyPtr variety_by_name(const std::string& name) {
  static const std::regex simple(R"((R|S)\^(\d+)|(SO|U|SU)\((\d+)\))");
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = name.find('x', start);
    parts.push_back(name.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  static const char* kPrefixes[] = {"x", "y", "z", "w", "u", "v", "p", "q"};
  std::vector<VarietyPtr> factors;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::smatch m;
    if (!std::regex_match(parts[i], m, simple)) throw ParseError("unknown variety name: '" + name + "'");
    const bool single = parts.size() == 1;
    if (m[1].matched) {
      auto n = std::stoul(m[2]);
      if (m[1] == "R") {
        factors.push_back(affine_space(n, single ? "X" : std::string("X") + kPrefixes[i % 8]));
      } else {
        factors.push_back(sphere(n, single ? "x" : kPrefixes[i % 8]));
      }
    } else {
      auto n = std::stoul(m[4]);
      if (m[3] == "SO") factors.push_back(special_orthogonal(n));
      else if (m[3] == "U") factors.push_back(unitary(n));
      else factors.push_back(special_unitary(n));
    }
  }
  return factors.size() == 1 ? factors[0] : product(std::move(factors));
}

PointOnVariety::PointOnVariety(VarietyPtr variety, std::vector<Rational> coordinates)
    : variety_(std::move(variety)), coords_(std::move(coordinates)) {
  if (coords_.size() != variety_->ambient_dim()) {
    throw InvalidArgument("point has " + std::to_string(coords_.size()) + " coordinates, " + variety_->name() +
                            " needs " + std::to_string(variety_->ambient_dim()));
  }
  for (std::size_t i = 0; i < variety_->relations().size(); ++i) {
    if (sgn(evaluate(variety_->relations()[i], std::span<const Rational>(coords_))) != 0) {
      throw CodomainViolation("point is not on " + variety_->name() + " (relation " + std::to_string(i) + ")");
    }
  }
}

std::vector<double> PointOnVariety::to_doubles() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.get_d());
  return out;
}

PointOnVariety base_point(const VarietyPtr& v) {
  std::vector<Rational> c(v->ambient_dim(), 0);
  c[0] = 1;
  return PointOnVariety(v, std::move(c));
}

PointOnVariety antipode_of_base_point(const VarietyPtr& v) {
  std::vector<Rational> c(v->ambient_dim(), 0);
  c[0] = -1;
  return PointOnVariety(v, std::move(c));
}

Rational random_rational(std::mt19937_64& rng, std::uint64_t height) {
  if (height == 0) throw InvalidArgument("sampler height must be positive");
  auto h = static_cast<long long>(height);
  std::uniform_int_distribution<long long> num(-h, h);
  std::uniform_int_distribution<long long> den(1, h);
  auto n = num(rng);
  auto d = den(rng);
  Rational q(Integer(static_cast<long>(n)), Integer(static_cast<long>(d)));
  q.canonicalize();
  return q;
}

std::vector<Rational> sphere_point_from_parameters(std::span<const Rational> params) {
  Rational s = 0;
  for (const auto& x : params) s += x * x;
  Rational denom = 1 + s;
  std::vector<Rational> out;
  out.reserve(params.size() + 1);
  out.push_back((1 - s) / denom);
  for (const auto& x : params) out.push_back(2 * x / denom);
  return out;
}

RationalMatrix random_skew_symmetric(std::mt19937_64& rng, std::size_t n, const SamplerOptions& options) {
  RationalMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational t = random_rational(rng, options.height) * options.scale;
      a(i, j) = t;
      a(j, i) = -t;
    }
  return a;
}

GaussianMatrix random_skew_hermitian(std::mt19937_64& rng, std::size_t k, const SamplerOptions& options) {
  GaussianMatrix a(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    a(i, i) = GaussianRational(0, random_rational(rng, options.height) * options.scale);
    for (std::size_t j = i + 1; j < k; ++j) {
      GaussianRational z(random_rational(rng, options.height) * options.scale,
                         random_rational(rng, options.height) * options.scale);
      a(i, j) = z;
      a(j, i) = -z.conj();
    }
  }
  return a;
}

std::vector<Rational> flatten(const RationalMatrix& m) { return m.data(); }

std::vector<Rational> flatten(const GaussianMatrix& m) {
  std::vector<Rational> out;
  out.reserve(2 * m.data().size());
  for (const auto& z : m.data()) {
    out.push_back(z.re);
    out.push_back(z.im);
  }
  return out;
}

RationalMatrix unflatten_real(std::span<const Rational> coords, std::size_t n) {
  if (coords.size() != n * n) throw InvalidArgument("coordinate count does not match an n x n matrix");
  return RationalMatrix(n, n, std::vector<Rational>(coords.begin(), coords.end()));
}

GaussianMatrix unflatten_complex(std::span<const Rational> coords, std::size_t k) {
  if (coords.size() != 2 * k * k) throw InvalidArgument("coordinate count does not match a complex k x k matrix");
  GaussianMatrix m(k, k);
  for (std::size_t e = 0; e < k * k; ++e) m(e / k, e % k) = GaussianRational(coords[2 * e], coords[2 * e + 1]);
  return m;
}

namespace {

std::vector<Rational> sample_coordinates(const Variety& v, std::uint64_t seed, const SamplerOptions& options) {
  std::mt19937_64 rng(stream_seed(seed, 0));
  switch (v.sampler()) {
    case SamplerKind::kAffine: {
      std::vector<Rational> c;
      for (std::size_t i = 0; i < v.ambient_dim(); ++i) c.push_back(random_rational(rng, options.height) * options.scale);
      return c;
    }
    case SamplerKind::kSphere: {
      std::vector<Rational> params;
      for (std::size_t i = 0; i < v.parameter(); ++i) params.push_back(random_rational(rng, options.height) * options.scale);
      return sphere_point_from_parameters(params);
    }
    case SamplerKind::kProduct: {
      std::vector<Rational> c;
      for (std::size_t i = 0; i < v.factors().size(); ++i) {
        auto part = sample_coordinates(*v.factors()[i], stream_seed(seed, i + 1), options);
        c.insert(c.end(), part.begin(), part.end());
      }
      return c;
    }
    case SamplerKind::kSpecialOrthogonal:
      return flatten(cayley(random_skew_symmetric(rng, v.parameter(), options)));
    case SamplerKind::kUnitary:
      return flatten(cayley(random_skew_hermitian(rng, v.parameter(), options)));
    case SamplerKind::kSpecialUnitary: {
      const auto k = v.parameter();
      auto g = cayley(random_skew_hermitian(rng, k, options));
      auto d = determinant(g).conj();
      for (std::size_t i = 0; i < k; ++i) g(i, k - 1) = g(i, k - 1) * d;
      return flatten(g);
    }
    case SamplerKind::kNone:
      break;
  }
  throw NoSampler(v.name());
}

}  // namespace

PointOnVariety sample_point(const VarietyPtr& variety, std::uint64_t seed, const SamplerOptions& options) {
  return PointOnVariety(variety, sample_coordinates(*variety, seed, options));
}

// ---------------------------------------------------------------- JSON

namespace {

const char* sampler_name(SamplerKind k) {
  switch (k) {
    case SamplerKind::kAffine: return "affine";
    case SamplerKind::kSphere: return "sphere";
    case SamplerKind::kProduct: return "product";
    case SamplerKind::kSpecialOrthogonal: return "cayley-so";
    case SamplerKind::kUnitary: return "cayley-u";
    case SamplerKind::kSpecialUnitary: return "cayley-su";
    case SamplerKind::kNone: break;
  }
  return "none";
}

}  // namespace

json to_json(const Variety& v) {
  json rels = json::array();
  for (const auto& r : v.relations()) rels.push_back(to_json(r));
  json blocks = json::array();
  for (const auto& b : v.sphere_blocks()) blocks.push_back(b.vars);
  return {{"name", v.name()},
          {"variables", to_json(*v.registry())},
          {"relations", std::move(rels)},
          {"sphere_blocks", std::move(blocks)},
          {"sampler", sampler_name(v.sampler())}};
}

VarietyPtr variety_from_json(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("variables")) {
    throw ParseError("variety entries need \"name\" and \"variables\"");
  }
  auto name = j["name"].get<std::string>();
  auto reg = registry_from_json(j["variables"]);
  if (j.value("sampler", std::string("none")) != "none") {
    // Standard varieties are rebuilt from their names so the sampler is available.
    try {
      auto standard = variety_by_name(name);
      if (*standard->registry() == *reg) return standard;
    } catch (const ParseError&) {
    }
  }
  std::vector<Polynomial> relations;
  for (const auto& r : j.value("relations", json::array())) relations.push_back(polynomial_from_json(r, reg));
  std::vector<SphereBlock> blocks;
  for (const auto& b : j.value("sphere_blocks", json::array())) {
    SphereBlock block;
    for (const auto& v : b) block.vars.push_back(v.get<VarId>());
    if (block.vars.empty()) throw ParseError("empty sphere block");
    blocks.push_back(std::move(block));
  }
  return std::make_shared<const Variety>(name, reg, std::move(relations), std::move(blocks), SamplerKind::kNone, 0);
}

json variety_registry_json(const std::vector<VarietyPtr>& varieties) {
  json list = json::array();
  for (const auto& v : varieties) list.push_back(to_json(*v));
  return {{"varieties", std::move(list)}};
}

std::vector<VarietyPtr> varieties_from_registry_json(const json& j) {
  if (!j.is_object() || !j.contains("varieties") || !j["varieties"].is_array()) {
    throw ParseError("variety registry must be an object with a \"varieties\" array");
  }
  std::vector<VarietyPtr> out;
  for (const auto& v : j["varieties"]) out.push_back(variety_from_json(v));
  return out;
}

}  // namespace regmaps
