#include <doctest.h>

#include <fstream>

#include "oracles.hpp"
#include "regmaps/catalog.hpp"
#include "regmaps/errors.hpp"
#include "regmaps/group_maps.hpp"
#include "regmaps/sphere_maps.hpp"
#include "regmaps/topology.hpp"

using namespace regmaps;

namespace {

std::vector<Rational> pt(std::initializer_list<Rational> v) { return v; }

std::vector<Rational> e_vec(std::size_t dim) {
  std::vector<Rational> v(dim, 0);
  v[0] = 1;
  return v;
}

bool first_column_is_e(const oracle::Mat& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i][0] != (i == 0 ? 1 : 0)) return false;
  return true;
}

}  // namespace

TEST_SUITE("group_maps") {

TEST_CASE("first_column") {
  auto p = first_column(2);
  CHECK(evaluate_coordinates(p, flatten(RationalMatrix::identity(2))) == pt({1, 0}));
  CHECK(evaluate_coordinates(p, pt({0, -1, 1, 0})) == pt({0, 1}));
  CHECK(maps_into(first_column(4), 50, 0).passed);
  CHECK(maps_into(first_column_u(2), 50, 0).passed);
  CHECK_THROWS_AS(first_column(1), InvalidArgument);
}

TEST_CASE("section_so examples") {
  auto s = section_so(2);
  CHECK(s.evaluate_real(pt({1, 0})) == RationalMatrix::identity(2));
  CHECK(s.evaluate_real(pt({0, 1})) == RationalMatrix(2, 2, pt({0, -1, 1, 0})));
  CHECK_THROWS_AS(section_so(1), InvalidArgument);
  CHECK_THROWS_AS(s.evaluate_real(pt({-1, 0})), DenominatorZero);
}

TEST_CASE("section_so entries follow the four-case formula") {
  std::mt19937_64 rng(12);
  for (std::size_t n : {2u, 3u, 4u}) {
    auto s = section_so(n);
    for (int t = 0; t < 20; ++t) {
      auto x = oracle::sphere_point(rng, n - 1);
      auto m = s.evaluate_real(x);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Rational expected;
          if (j == 0) expected = x[i];
          else if (i == 0) expected = -x[j];
          else if (i == j) expected = 1 - x[i] * x[i] / (1 + x[0]);
          else expected = -x[i] * x[j] / (1 + x[0]);
          CHECK(m(i, j) == expected);
        }
    }
  }
}

TEST_CASE("section_so lands in SO(n) and splits p") {
  for (std::size_t n : {2u, 3u, 4u}) {
    auto s = section_so(n);
    auto into = maps_into(s.base());
    CHECK(into.passed);
    CHECK(into.method == "symbolic");
    auto ps = compose(first_column(n), s.base());
    CHECK(equal_mod(ps, identity_map(s.base().domain()), 20, 0).equal);
    for (std::uint64_t t = 0; t < 100; ++t) {
      auto a = sample_point(s.base().domain(), t).coordinates();
      auto m = oracle::to_rows(evaluate_coordinates(s.base(), a), n);
      CHECK(oracle::is_identity(oracle::multiply(oracle::transpose(m), m)));
      CHECK(oracle::det_leibniz(m) == 1);
      for (std::size_t i = 0; i < n; ++i) CHECK(m[i][0] == a[i]);
    }
  }
  // n = 2: p o s = id as polynomials modulo the circle block
  auto s = section_so(2);
  const auto& d = s.base().domain();
  for (std::size_t i = 0; i < 2; ++i) {
    auto diff = s.entry(i, 0) - Polynomial::variable(d->registry(), static_cast<VarId>(i)) * s.base().denominator();
    CHECK(normal_form(diff, d->sphere_blocks()).is_zero());
  }
}

TEST_CASE("section_u entries follow the complex formula") {
  std::mt19937_64 rng(13);
  for (std::size_t k : {2u, 3u}) {
    auto s = section_u(k);
    for (int t = 0; t < 10; ++t) {
      auto x = oracle::sphere_point(rng, 2 * k - 1);
      std::vector<GaussianRational> z;
      for (std::size_t j = 0; j < k; ++j) z.emplace_back(x[2 * j], x[2 * j + 1]);
      GaussianRational one(1), shift = one + z[0], shift_bar = shift.conj();
      auto m = s.evaluate_complex(x);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          GaussianRational expected;
          if (j == 0) expected = z[i];
          else if (i == 0) expected = -(shift / shift_bar) * z[j].conj();
          else if (i == j) expected = one - GaussianRational(z[i].norm2()) / shift_bar;
          else expected = -(z[i] * z[j].conj()) / shift_bar;
          CHECK(m(i, j) == expected);
        }
    }
  }
}

TEST_CASE("section_u lands in U(k) and splits p") {
  for (std::size_t k : {1u, 2u, 3u}) {
    auto s = section_u(k);
    CHECK(s.evaluate_complex(e_vec(2 * k)) == GaussianMatrix::identity(k));
    CHECK(maps_into(s.base()).passed);
    auto ps = compose(first_column_u(k), s.base());
    CHECK(equal_mod(ps, identity_map(s.base().domain()), 20, 0).equal);
    for (std::uint64_t t = 0; t < (k == 2 ? 100u : 20u); ++t) {
      auto a = sample_point(s.base().domain(), t).coordinates();
      auto m = oracle::to_complex(evaluate_coordinates(s.base(), a), k);
      CHECK(oracle::is_unitary(m));
      for (std::size_t i = 0; i < k; ++i) {
        CHECK(m.re[i * k] == a[2 * i]);
        CHECK(m.im[i * k] == a[2 * i + 1]);
      }
    }
  }
  CHECK_THROWS_AS(section_u(0), InvalidArgument);
}

TEST_CASE("retract_so") {
  for (std::size_t n : {3u, 4u}) {
    auto r = retract_so(n);
    const auto& f = r.base();
    CHECK(evaluate_coordinates(f, flatten(RationalMatrix::identity(n))) == flatten(RationalMatrix::identity(n)));
    std::size_t checked = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      auto g = sample_point(f.domain(), t).coordinates();
      if (g[0] == -1) continue;
      auto img = evaluate_coordinates(f, g);
      auto m = oracle::to_rows(img, n);
      CHECK(first_column_is_e(m));
      CHECK(oracle::is_identity(oracle::multiply(oracle::transpose(m), m)));
      CHECK(oracle::det_leibniz(m) == 1);
      CHECK(evaluate_coordinates(f, img) == img);
      ++checked;
    }
    CHECK(checked >= 95);
    for (std::uint64_t t = 0; t < 50; ++t) {
      auto h = unflatten_real(sample_point(special_orthogonal(n - 1), t).coordinates(), n - 1);
      auto g = flatten(embed_lower_block(h, n));
      CHECK(evaluate_coordinates(f, g) == g);
    }
  }
  CHECK_THROWS_AS(retract_so(2), InvalidArgument);
}

TEST_CASE("retract_u") {
  const std::size_t k = 2;
  auto r = retract_u(k);
  const auto& f = r.base();
  auto id = flatten(GaussianMatrix::identity(k));
  CHECK(evaluate_coordinates(f, id) == id);
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto g = sample_point(f.domain(), t).coordinates();
    auto img = evaluate_coordinates(f, g);
    auto m = oracle::to_complex(img, k);
    CHECK(oracle::is_unitary(m));
    CHECK(m.re[0] == 1);
    CHECK(m.im[0] == 0);
    CHECK(m.re[k] == 0);
    CHECK(m.im[k] == 0);
  }
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto h = unflatten_complex(sample_point(unitary(k - 1), t).coordinates(), k - 1);
    auto g = flatten(embed_lower_block(h, k));
    CHECK(evaluate_coordinates(f, g) == g);
  }
  CHECK_THROWS_AS(retract_u(1), InvalidArgument);
}

TEST_CASE("chain_retract") {
  auto c = chain_retract(4, 2);
  const auto& f = c.base();
  auto id = flatten(RationalMatrix::identity(4));
  CHECK(evaluate_coordinates(f, id) == id);
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto h = unflatten_real(sample_point(special_orthogonal(2), t).coordinates(), 2);
    auto g = flatten(embed_lower_block(h, 4));
    CHECK(evaluate_coordinates(f, g) == g);
  }
  SamplerOptions near;
  near.scale = Rational(1, 100);
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto g = sample_point(f.domain(), t, near).coordinates();
    auto m = oracle::to_rows(evaluate_coordinates(f, g), 4);
    for (std::size_t col = 0; col < 2; ++col)
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(m[i][col] == (i == col ? 1 : 0));
        CHECK(m[col][i] == (i == col ? 1 : 0));
      }
    CHECK(oracle::is_identity(oracle::multiply(oracle::transpose(m), m)));
  }
  // single step equals retract_so
  CHECK(equal_mod(chain_retract(3, 2).base(), retract_so(3).base(), 20, 0).equal);
  CHECK_THROWS_AS(chain_retract(3, 3), InvalidArgument);
  CHECK_THROWS_AS(chain_retract(3, 1), InvalidArgument);
}

TEST_CASE("su_retract") {
  const std::size_t k = 2;
  auto r = su_retract(k);
  const auto& f = r.base();
  auto id = flatten(GaussianMatrix::identity(k));
  CHECK(evaluate_coordinates(f, id) == id);
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto g = sample_point(unitary(k), t).coordinates();
    auto m = oracle::to_complex(evaluate_coordinates(f, g), k);
    CHECK(oracle::complex_det(m) == std::pair<Rational, Rational>(1, 0));
    CHECK(oracle::is_unitary(m));
    auto h = sample_point(special_unitary(k), t).coordinates();
    CHECK(evaluate_coordinates(f, h) == h);
  }
  CHECK(maps_into(su_retract(3).base(), 20, 0).passed);
  CHECK_THROWS_AS(su_retract(0), InvalidArgument);
}

TEST_CASE("embed_u_in_so") {
  auto e1 = embed_u_in_so(1);
  CHECK(e1.evaluate_real(flatten(GaussianMatrix::identity(1))) == RationalMatrix::identity(2));
  CHECK(e1.evaluate_real(pt({0, 1})) == RationalMatrix(2, 2, pt({0, -1, 1, 0})));
  auto e2 = embed_u_in_so(2);
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto g = sample_point(unitary(2), t).coordinates();
    auto m = oracle::to_rows(evaluate_coordinates(e2.base(), g), 4);
    CHECK(oracle::is_identity(oracle::multiply(oracle::transpose(m), m)));
    CHECK(oracle::det_leibniz(m) == 1);
  }
  CHECK_THROWS_AS(embed_u_in_so(0), InvalidArgument);
}

TEST_CASE("j_map with f = I") {
  for (auto [n, k] : {std::pair{1u, 2u}, std::pair{2u, 3u}, std::pair{3u, 1u}}) {
    auto g = j_map(jmap_identity_input(n, k));
    CHECK(g.domain()->name() == "S^" + std::to_string(n + k));
    CHECK(g.codomain()->name() == "S^" + std::to_string(k));
    auto into = maps_into(g);
    CHECK(into.passed);
    CHECK(into.method == "symbolic");
    CHECK(evaluate_coordinates(g, e_vec(n + k + 1)) == e_vec(k + 1));
  }
  // ((1 - |y|^2), 2y) / (1 + |y|^2)
  auto g = j_map(jmap_identity_input(1, 2));
  auto y = sphere_point_from_parameters(pt({Rational(1, 3), Rational(2, 7), Rational(-1, 2)}));
  Rational y2 = y[2] * y[2] + y[3] * y[3];
  CHECK(evaluate_coordinates(g, y) == pt({(1 - y2) / (1 + y2), 2 * y[2] / (1 + y2), 2 * y[3] / (1 + y2)}));
}

TEST_CASE("j_map rotation family") {
  auto input = jmap_rotation_input();
  auto g = j_map(input);
  std::vector<PointOnVariety> fiber;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto x = sample_point(sphere(1), t).coordinates();
    x.resize(4, 0);
    fiber.emplace_back(g.domain(), x);
    CHECK(evaluate_coordinates(g, x) == e_vec(3));
  }
  auto probe = regular_value_probe(g, fiber, e_vec(3));
  CHECK(probe.regular);
  CHECK(probe.expected_rank == 2);
  for (auto r : probe.ranks) CHECK(r == 2);
  // the rotation matrices are orthogonal only on S^1, so g leaves S^2 elsewhere
  CHECK_FALSE(maps_into(g).passed);
  auto g2 = j_map(jmap_rotation_squared_input());
  CHECK(maps_into(g2).passed);
}

TEST_CASE("j_map differential on (0, y) directions") {
  for (auto input : {jmap_rotation_input(), jmap_rotation_squared_input()}) {
    auto g = j_map(input);
    auto jac = jacobian(g);
    for (std::uint64_t t = 0; t < 20; ++t) {
      auto x = sample_point(sphere(1), t).coordinates();
      auto q = evaluate(input.f.base().denominator(), std::span<const Rational>(x));
      auto fx = input.f.evaluate_real(x);
      auto point = x;
      point.resize(4, 0);
      auto d = jac.evaluate(point);
      // columns 2, 3 are the y directions: dg/dy_l = (0, (2 / Q) f(x)^T e_l)
      for (std::size_t l = 0; l < 2; ++l) {
        CHECK(d(0, 2 + l) == 0);
        for (std::size_t i = 0; i < 2; ++i) CHECK(d(1 + i, 2 + l) == 2 * fx(l, i) / q);
      }
    }
  }
}

TEST_CASE("j_map input validation") {
  auto bad = jmap_identity_input(1, 2);
  auto r = bad.f.base().domain();
  auto two = Polynomial::constant(r->registry(), 2);
  auto zero = Polynomial(r->registry());
  JMapInput not_identity{MatrixMap(RationalMap(r, special_orthogonal(2), {two, zero, zero, two},
                                               Polynomial::constant(r->registry(), 1)),
                                   2, 2),
                         1, 2};
  CHECK_THROWS_AS(j_map(not_identity), InvalidArgument);
  // Q = x1 changes sign on S^1
  auto x1 = Polynomial::variable(r->registry(), 0);
  JMapInput sign_change{MatrixMap(RationalMap(r, special_orthogonal(2), {x1, zero, zero, x1}, x1), 2, 2), 1, 2};
  CHECK_THROWS_AS(j_map(sign_change), InvalidArgument);
  JMapInput wrong_shape{bad.f, 2, 2};
  CHECK_THROWS_AS(j_map(wrong_shape), InvalidArgument);
}

TEST_CASE("j_map input JSON") {
  auto in = jmap_rotation_squared_input();
  auto back = jmap_input_from_json(to_json(in));
  CHECK(back.n == 1);
  CHECK(back.k == 2);
  CHECK(back.f.base().numerators() == in.f.base().numerators());
  CHECK(j_map(back).numerators() == j_map(in).numerators());
  std::ifstream file(REGMAPS_TEST_DATA "/jmap_rotation2.json");
  REQUIRE(file.good());
  auto from_file = jmap_input_from_json(json::parse(file));
  CHECK(j_map(from_file).numerators() == j_map(in).numerators());
  CHECK_THROWS_AS(jmap_input_from_json(json::object()), ParseError);
}

TEST_CASE("catalog resolves every family and its suite passes") {
  for (const char* name : {"stereo:2", "stereo-inv:1", "oplus:1", "oplus-composed:1", "reflect:2:3", "phi:1",
                           "zpow:-2", "antipodal:1", "id:2", "p:3", "p-u:2", "s:3", "s-u:2", "r:3", "r-u:2",
                           "chain:4:2", "su-retract:2", "embed-u:2", "jmap:identity:1:2", "jmap:rotation",
                           "jmap:rotation2"}) {
    CAPTURE(name);
    auto e = resolve(name);
    CHECK(e.name == name);
    auto suite = identity_suite(e, 10, 0);
    CHECK(suite.passed());
    CHECK(denominator_check(e.map, 10, 0, denominator_probes(e.map)).passed);
  }
  CHECK_THROWS_AS(resolve("nope:1"), ParseError);
  CHECK_THROWS_AS(resolve("stereo:x"), ParseError);
  CHECK_THROWS_AS(resolve("stereo:1:2"), ParseError);
  CHECK_THROWS_AS(resolve("stereo:0"), InvalidArgument);
  CHECK_THROWS_AS(resolve("jmap:/no/such/file.json"), ParseError);
  auto f = resolve(std::string("jmap:") + REGMAPS_TEST_DATA + "/jmap_rotation2.json");
  CHECK(maps_into(f.map).passed);
}

}  // TEST_SUITE
