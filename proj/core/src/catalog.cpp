#include "regmaps/catalog.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "regmaps/errors.hpp"
#include "regmaps/sphere_maps.hpp"
#include "regmaps/topology.hpp"

namespace regmaps {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

long parse_int(const std::string& s, const std::string& name) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + s + "' in catalog name '" + name + "'");
  }
  if (used != s.size()) throw ParseError("bad integer '" + s + "' in catalog name '" + name + "'");
  return v;
}

std::size_t parse_size(const std::string& s, const std::string& name) {
  long v = parse_int(s, name);
  if (v < 0) throw InvalidArgument("negative parameter in '" + name + "'");
  return static_cast<std::size_t>(v);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

CatalogEntry plain(std::string name, std::string family, std::vector<std::size_t> params, RationalMap map) {
  return CatalogEntry{std::move(name), std::move(family), std::move(params), std::move(map), std::nullopt, std::nullopt};
}

CatalogEntry matrix(std::string name, std::string family, std::vector<std::size_t> params, MatrixMap m) {
  RationalMap base = m.base();
  return CatalogEntry{std::move(name), std::move(family), std::move(params), std::move(base), std::move(m),
                      std::nullopt};
}

CatalogEntry jmap_entry(std::string name, JMapInput input) {
  RationalMap g = j_map(input);
  g.with_label(name);
  return CatalogEntry{std::move(name), "jmap", {input.n, input.k}, std::move(g), std::nullopt, std::move(input)};
}

}  // namespace

std::vector<std::string> catalog_patterns() {
  return {"stereo:n",   "stereo-inv:n", "oplus:n",     "oplus-composed:n", "reflect:n:j",       "phi:k",
          "zpow:d",     "antipodal:n",  "id:n",        "p:n",              "p-u:k",             "s:n",
          "s-u:k",      "r:n",          "r-u:k",       "chain:m:k",        "su-retract:k",      "embed-u:k",
          "jmap:<file>", "jmap:identity:n:k", "jmap:rotation", "jmap:rotation2", "<map.json>"};
}

CatalogEntry resolve(const std::string& name, const std::vector<VarietyPtr>& varieties) {
  auto parts = split(name, ':');
  if (parts.empty()) throw ParseError("empty catalog name");
  const auto& head = parts[0];
  auto arg = [&](std::size_t i) { return parse_size(parts.at(i), name); };
  auto want = [&](std::size_t count) {
    if (parts.size() != count + 1) {
      throw ParseError("'" + head + "' takes " + std::to_string(count) + " parameter(s): '" + name + "'");
    }
  };

  if (head == "jmap") {
    if (parts.size() == 2 && parts[1] == "rotation") return jmap_entry(name, jmap_rotation_input());
    if (parts.size() == 2 && parts[1] == "rotation2") return jmap_entry(name, jmap_rotation_squared_input());
    if (parts.size() == 4 && parts[1] == "identity") return jmap_entry(name, jmap_identity_input(arg(2), arg(3)));
    if (parts.size() < 2) throw ParseError("jmap needs a file: jmap:<file>");
    auto path = name.substr(5);
    try {
      return jmap_entry(name, jmap_input_from_json(read_json_file(path)));
    } catch (const InvalidArgument&) {
      throw;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("'" + path + "': " + e.what());
    }
  }

  if (parts.size() == 1 && (std::filesystem::exists(name) || name.ends_with(".json"))) {
    return plain(name, "file", {}, rational_map_from_json(read_json_file(name), varieties));
  }

  if (head == "stereo") return want(1), plain(name, head, {arg(1)}, stereo(arg(1)));
  if (head == "stereo-inv") return want(1), plain(name, head, {arg(1)}, stereo_inv(arg(1)));
  if (head == "oplus") return want(1), plain(name, head, {arg(1)}, oplus(arg(1)));
  if (head == "oplus-composed") return want(1), plain(name, head, {arg(1)}, oplus_composed(arg(1)));
  if (head == "reflect") return want(2), plain(name, head, {arg(1), arg(2)}, reflect(arg(1), arg(2)));
  if (head == "phi") return want(1), plain(name, head, {arg(1)}, phi_double(arg(1)));
  if (head == "antipodal") return want(1), plain(name, head, {arg(1)}, antipodal(arg(1)));
  if (head == "id") {
    want(1);
    if (arg(1) < 1) throw InvalidArgument("id:n needs n >= 1");
    return plain(name, head, {arg(1)}, identity_map(sphere(arg(1))).with_label(name));
  }
  if (head == "zpow") {
    want(1);
    long d = parse_int(parts[1], name);
    return plain(name, head, {static_cast<std::size_t>(d < 0 ? -d : d)}, circle_power(d));
  }
  if (head == "p") return want(1), plain(name, head, {arg(1)}, first_column(arg(1)));
  if (head == "p-u") return want(1), plain(name, head, {arg(1)}, first_column_u(arg(1)));
  if (head == "s") return want(1), matrix(name, head, {arg(1)}, section_so(arg(1)));
  if (head == "s-u") return want(1), matrix(name, head, {arg(1)}, section_u(arg(1)));
  if (head == "r") return want(1), matrix(name, head, {arg(1)}, retract_so(arg(1)));
  if (head == "r-u") return want(1), matrix(name, head, {arg(1)}, retract_u(arg(1)));
  if (head == "chain") return want(2), matrix(name, head, {arg(1), arg(2)}, chain_retract(arg(1), arg(2)));
  if (head == "su-retract") return want(1), matrix(name, head, {arg(1)}, su_retract(arg(1)));
  if (head == "embed-u") return want(1), matrix(name, head, {arg(1)}, embed_u_in_so(arg(1)));
  throw ParseError("unknown catalog name '" + name + "'");
}

std::vector<std::vector<Rational>> denominator_probes(const RationalMap& f) {
  std::vector<std::vector<Rational>> probes = f.excluded_points();
  const auto& d = f.domain();
  std::vector<Rational> e;
  switch (d->sampler()) {
    case SamplerKind::kSphere:
      e = base_point(d).coordinates();
      break;
    case SamplerKind::kSpecialOrthogonal:
      e = flatten(RationalMatrix::identity(d->parameter()));
      break;
    case SamplerKind::kUnitary:
    case SamplerKind::kSpecialUnitary:
      e = flatten(GaussianMatrix::identity(d->parameter()));
      break;
    case SamplerKind::kProduct: {
      for (const auto& factor : d->factors()) {
        if (factor->sampler() != SamplerKind::kSphere) return probes;
        auto b = base_point(factor).coordinates();
        e.insert(e.end(), b.begin(), b.end());
      }
      break;
    }
    default:
      e.assign(d->ambient_dim(), 0);
  }
  probes.insert(probes.begin(), e);
  return probes;
}

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

json SuiteReport::to_json() const {
  json a = json::array();
  for (const auto& c : checks) a.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"check", "identity_suite"}, {"passed", passed()}, {"checks", std::move(a)}};
}

// ---------------------------------------------------------------- suites

namespace {

std::vector<Rational> unit(std::size_t dim, std::size_t i, long sign = 1) {
  std::vector<Rational> v(dim, 0);
  v[i] = sign;
  return v;
}

std::vector<Rational> concat(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  auto out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

json points_json(std::size_t checked, std::size_t skipped) { return {{"samples", checked}, {"skipped", skipped}}; }

void add_equal(SuiteReport& r, const std::string& name, const RationalMap& f, const RationalMap& g, std::size_t trials,
               std::uint64_t seed) {
  auto eq = equal_mod(f, g, trials, seed);
  r.checks.push_back({name, eq.equal, eq.to_json()});
}

void add_zero(SuiteReport& r, const std::string& name, const Polynomial& p, const std::vector<SphereBlock>& blocks) {
  auto reduced = normal_form(p, blocks);
  r.checks.push_back({name, reduced.is_zero(), {{"terms_before", p.size()}, {"terms_after", reduced.size()}}});
}

void oplus_suite(SuiteReport& r, std::size_t n, const RationalMap& f, std::size_t trials, std::uint64_t seed) {
  auto t = oplus_norm_terms(n);
  add_zero(r, "norm_identity_lhs_eq_middle", t.lhs_minus_middle(), t.blocks);
  add_zero(r, "norm_identity_middle_eq_rhs", t.middle_minus_rhs(), t.blocks);
  add_zero(r, "norm_identity_lhs_eq_rhs", t.lhs_minus_rhs(), t.blocks);
  add_equal(r, "closed_form_eq_composed", f, oplus_composed(n), trials, seed);

  auto s = sphere(n);
  const auto e = unit(n + 1, 0);
  const auto me = unit(n + 1, 0, -1);
  bool ok = true;
  for (std::size_t t2 = 0; t2 < trials && ok; ++t2) {
    auto a = sample_point(s, stream_seed(seed, t2)).coordinates();
    ok = evaluate_coordinates(f, concat(a, me)) == me && evaluate_coordinates(f, concat(me, a)) == me &&
         evaluate_coordinates(f, concat(e, a)) == a && evaluate_coordinates(f, concat(a, e)) == a;
  }
  r.checks.push_back({"boundary_and_unit", ok, points_json(trials, 0)});
}

void section_suite(SuiteReport& r, const MatrixMap& m, bool complex, std::size_t trials, std::uint64_t seed) {
  const auto& s = m.base();
  const auto& dom = s.domain();
  const std::size_t dim = dom->ambient_dim();
  // p o s = id: first column numerators equal x * den modulo the sphere block
  bool symbolic = true;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto c = m.complex_entry(i, 0);
    auto x_re = Polynomial::variable(dom->registry(), static_cast<VarId>(complex ? 2 * i : i));
    symbolic = symbolic && normal_form(c.re - x_re * s.denominator(), dom->sphere_blocks()).is_zero();
    if (complex) {
      auto x_im = Polynomial::variable(dom->registry(), static_cast<VarId>(2 * i + 1));
      symbolic = symbolic && normal_form(c.im - x_im * s.denominator(), dom->sphere_blocks()).is_zero();
    }
  }
  r.checks.push_back({"p_of_s_is_identity", symbolic, {{"method", "symbolic"}}});

  auto e = unit(dim, 0);
  bool at_e = complex ? m.evaluate_complex(e) == GaussianMatrix::identity(m.rows())
                      : m.evaluate_real(e) == RationalMatrix::identity(m.rows());
  r.checks.push_back({"s_of_e_is_identity", at_e, json::object()});

  bool group = true;
  for (std::size_t t = 0; t < trials && group; ++t) {
    auto a = sample_point(dom, stream_seed(seed, t)).coordinates();
    if (complex) {
      auto g = m.evaluate_complex(a);
      group = conjugate_transpose(g) * g == GaussianMatrix::identity(m.rows());
    } else {
      auto g = m.evaluate_real(a);
      group = g.transpose() * g == RationalMatrix::identity(m.rows()) && determinant(g) == 1;
    }
  }
  r.checks.push_back({complex ? "unitary_at_samples" : "special_orthogonal_at_samples", group, points_json(trials, 0)});
}

void retraction_suite(SuiteReport& r, const MatrixMap& m, bool complex, std::size_t trials, std::uint64_t seed) {
  const auto& f = m.base();
  const auto& g = f.domain();
  const std::size_t n = m.rows();
  bool first_col = true, idempotent = true, fixes = true;
  std::size_t skipped = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto a = sample_point(g, stream_seed(seed, t)).coordinates();
    if (sgn(evaluate(f.denominator(), std::span<const Rational>(a))) == 0) {
      ++skipped;
      continue;
    }
    auto image = evaluate_coordinates(f, a);
    if (complex) {
      auto h = unflatten_complex(image, n);
      for (std::size_t i = 0; i < n; ++i) first_col = first_col && h(i, 0) == GaussianRational(i == 0 ? 1 : 0);
      idempotent = idempotent && evaluate_coordinates(f, image) == image;
      auto sub = sample_point(unitary(n - 1), stream_seed(seed + 1, t)).coordinates();
      auto embedded = flatten(embed_lower_block(unflatten_complex(sub, n - 1), n));
      fixes = fixes && evaluate_coordinates(f, embedded) == embedded;
    } else {
      auto h = unflatten_real(image, n);
      for (std::size_t i = 0; i < n; ++i) first_col = first_col && h(i, 0) == (i == 0 ? 1 : 0);
      idempotent = idempotent && evaluate_coordinates(f, image) == image;
      auto sub = sample_point(special_orthogonal(n - 1), stream_seed(seed + 1, t)).coordinates();
      auto embedded = flatten(embed_lower_block(unflatten_real(sub, n - 1), n));
      fixes = fixes && evaluate_coordinates(f, embedded) == embedded;
    }
  }
  r.checks.push_back({"p_of_r_is_e", first_col, points_json(trials - skipped, skipped)});
  r.checks.push_back({"fixes_subgroup", fixes, points_json(trials, 0)});
  r.checks.push_back({"idempotent", idempotent, points_json(trials - skipped, skipped)});
}

void chain_suite(SuiteReport& r, const MatrixMap& m, std::size_t k, std::size_t trials, std::uint64_t seed) {
  const auto& f = m.base();
  const std::size_t n = m.rows();
  bool fixes = true;
  for (std::size_t t = 0; t < trials && fixes; ++t) {
    auto sub = sample_point(special_orthogonal(k), stream_seed(seed, t)).coordinates();
    auto embedded = flatten(embed_lower_block(unflatten_real(sub, k), n));
    fixes = evaluate_coordinates(f, embedded) == embedded;
  }
  r.checks.push_back({"fixes_subgroup", fixes, points_json(trials, 0)});

  // near the identity every intermediate retraction is defined
  SamplerOptions near;
  near.scale = Rational(1, 100);
  bool block = true;
  std::size_t skipped = 0;
  for (std::size_t t = 0; t < trials && block; ++t) {
    auto a = sample_point(f.domain(), stream_seed(seed + 1, t), near).coordinates();
    if (sgn(evaluate(f.denominator(), std::span<const Rational>(a))) == 0) {
      ++skipped;
      continue;
    }
    auto h = unflatten_real(evaluate_coordinates(f, a), n);
    for (std::size_t c = 0; c < n - k; ++c)
      for (std::size_t i = 0; i < n; ++i) block = block && h(i, c) == (i == c ? 1 : 0) && h(c, i) == (i == c ? 1 : 0);
  }
  r.checks.push_back({"block_form_near_identity", block, points_json(trials - skipped, skipped)});
}

void su_suite(SuiteReport& r, const MatrixMap& m, std::size_t k, std::size_t trials, std::uint64_t seed) {
  const auto& f = m.base();
  bool det_one = true, fixes = true;
  for (std::size_t t = 0; t < trials; ++t) {
    auto a = sample_point(unitary(k), stream_seed(seed, t)).coordinates();
    det_one = det_one && determinant(m.evaluate_complex(a)) == GaussianRational(1);
    auto b = sample_point(special_unitary(k), stream_seed(seed + 1, t)).coordinates();
    fixes = fixes && evaluate_coordinates(f, b) == b;
  }
  r.checks.push_back({"determinant_one", det_one, points_json(trials, 0)});
  r.checks.push_back({"fixes_su", fixes, points_json(trials, 0)});
}

void embed_suite(SuiteReport& r, const MatrixMap& m, std::size_t k, std::size_t trials, std::uint64_t seed) {
  bool ok = true;
  for (std::size_t t = 0; t < trials && ok; ++t) {
    auto a = sample_point(unitary(k), stream_seed(seed, t)).coordinates();
    auto h = m.evaluate_real(a);
    ok = h == realify(unflatten_complex(a, k)) && h.transpose() * h == RationalMatrix::identity(2 * k) &&
         determinant(h) == 1;
  }
  r.checks.push_back({"realification_in_so", ok, points_json(trials, 0)});
}

void jmap_suite(SuiteReport& r, const CatalogEntry& entry, std::size_t trials, std::uint64_t seed) {
  const auto& g = entry.map;
  const auto& in = *entry.jmap;
  const std::size_t dim = g.domain()->ambient_dim();
  const auto e_k = unit(in.k + 1, 0);
  r.checks.push_back({"e_zero_maps_to_e", evaluate_coordinates(g, unit(dim, 0)) == e_k, json::object()});

  std::vector<PointOnVariety> fiber;
  auto s = sphere(in.n);
  for (std::size_t t = 0; t < trials; ++t) {
    auto x = sample_point(s, stream_seed(seed, t)).coordinates();
    x.resize(dim, 0);
    fiber.emplace_back(g.domain(), std::move(x));
  }
  bool to_e = true;
  for (const auto& p : fiber) to_e = to_e && evaluate_coordinates(g, p.coordinates()) == e_k;
  r.checks.push_back({"fiber_maps_to_e", to_e, points_json(trials, 0)});
  if (!to_e) return;
  auto probe = regular_value_probe(g, fiber, e_k);
  r.checks.push_back({"e_regular_at_fiber", probe.regular, probe.to_json()});
}

}  // namespace

SuiteReport identity_suite(const CatalogEntry& entry, std::size_t trials, std::uint64_t seed) {
  SuiteReport r;
  const auto& f = entry.map;
  const auto& fam = entry.family;
  const auto p0 = entry.params.empty() ? 0 : entry.params[0];

  if (fam == "oplus" || fam == "oplus-composed") {
    oplus_suite(r, p0, fam == "oplus" ? f : oplus(p0), trials, seed);
  } else if (fam == "stereo") {
    add_equal(r, "stereo_inv_after_stereo_is_identity", compose(stereo_inv(p0), f), identity_map(f.domain()), trials,
              seed);
  } else if (fam == "stereo-inv") {
    add_equal(r, "stereo_after_stereo_inv_is_identity", compose(stereo(p0), f), identity_map(f.domain()), trials,
              seed);
  } else if (fam == "phi") {
    add_equal(r, "factors_through_antipodal", f, compose(f, antipodal(p0)), trials, seed);
    auto x = unit(p0 + 1, 1);
    r.checks.push_back({"equator_maps_to_minus_e", evaluate_coordinates(f, x) == unit(p0 + 1, 0, -1), json::object()});
  } else if (fam == "reflect" || fam == "antipodal") {
    add_equal(r, "involution", compose(f, f), identity_map(f.domain()), trials, seed);
  } else if (fam == "zpow") {
    auto w = winding_number(f);
    long d = parse_int(split(entry.name, ':')[1], entry.name);
    r.checks.push_back({"winding_equals_exponent", w.winding == d, w.to_json()});
  } else if (fam == "p" || fam == "p-u") {
    auto id = fam == "p" ? flatten(RationalMatrix::identity(p0)) : flatten(GaussianMatrix::identity(p0));
    auto e = unit(f.codomain()->ambient_dim(), 0);
    r.checks.push_back({"identity_maps_to_e", evaluate_coordinates(f, id) == e, json::object()});
  } else if (fam == "s" || fam == "s-u") {
    section_suite(r, *entry.matrix, fam == "s-u", trials, seed);
  } else if (fam == "r" || fam == "r-u") {
    retraction_suite(r, *entry.matrix, fam == "r-u", trials, seed);
  } else if (fam == "chain") {
    chain_suite(r, *entry.matrix, entry.params[1], trials, seed);
  } else if (fam == "su-retract") {
    su_suite(r, *entry.matrix, p0, trials, seed);
  } else if (fam == "embed-u") {
    embed_suite(r, *entry.matrix, p0, trials, seed);
  } else if (fam == "jmap") {
    jmap_suite(r, entry, trials, seed);
  }
  return r;
}

}  // namespace regmaps
