#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "regmaps/errors.hpp"
#include "regmaps/serialize.hpp"
#include "regmaps/sphere_maps.hpp"

using namespace regmaps;

namespace {

struct Ring {
  RegistryPtr reg = make_registry({"x1", "x2", "y1", "y2"});
  Polynomial x1 = Polynomial::variable(reg, "x1");
  Polynomial x2 = Polynomial::variable(reg, "x2");
  Polynomial y1 = Polynomial::variable(reg, "y1");
  Polynomial y2 = Polynomial::variable(reg, "y2");
  Polynomial c(const Rational& v) const { return Polynomial::constant(reg, v); }
};

}  // namespace

TEST_SUITE("polynomial") {

TEST_CASE("rationals are kept in lowest terms") {
  auto q = parse_rational("-6/4");
  CHECK(q == Rational(-3, 2));
  CHECK(to_fraction_string(q) == "-3/2");
  CHECK(to_fraction_string(Rational(5)) == "5/1");
  CHECK(q.get_den() > 0);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("6/-4"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
}

TEST_CASE("gaussian rationals") {
  GaussianRational a(1, 2), b(3, -1);
  CHECK(a * b == GaussianRational(5, 5));
  CHECK((a * b) / b == a);
  CHECK(a.conj() == GaussianRational(1, -2));
  CHECK(a.norm2() == 5);
}

TEST_CASE("add examples") {
  Ring r;
  CHECK((r.x1 + (-r.x1)).is_zero());
  auto p = (r.x1 * r.x1 + r.c(1)) + r.x2;
  CHECK(p.size() == 3);
  CHECK(p.coefficient(Monomial::variable(0, 2)) == 1);
  CHECK(p.coefficient(Monomial::variable(1)) == 1);
  CHECK(p.constant_term() == 1);
}

TEST_CASE("mul examples") {
  Ring r;
  CHECK((r.x1 + r.c(1)) * (r.x1 - r.c(1)) == r.x1 * r.x1 - r.c(1));
  CHECK((r.x1 * r.x2 * r.c(3) * Polynomial(r.reg)).is_zero());
  auto d = (r.c(1) + r.x1) * (r.c(1) + r.y1);
  CHECK(d == r.c(1) + r.x1 + r.y1 + r.x1 * r.y1);
}

TEST_CASE("registry mismatch is rejected") {
  Ring r;
  auto other = make_registry({"a", "b"});
  CHECK_THROWS_AS(r.x1 + Polynomial::variable(other, "a"), RegistryMismatch);
  CHECK_THROWS_AS(r.x1 * Polynomial::variable(other, "a"), RegistryMismatch);
  CHECK_THROWS_AS(Polynomial::variable(r.reg, "z9"), UnknownVariable);
}

TEST_CASE("differentiate examples") {
  Ring r;
  CHECK(differentiate(r.x1 * r.x1, 0) == r.x1 * Rational(2));
  CHECK(differentiate(r.x1 * r.x1, 1).is_zero());
  CHECK_THROWS_AS(differentiate(r.x1, 7), UnknownVariable);
  // d/dy_j of Q^2 + |y|^2 with Q a polynomial in x only
  auto q = r.c(1) + r.x1 * r.x2;
  auto den = q * q + r.y1 * r.y1 + r.y2 * r.y2;
  CHECK(differentiate(den, 2) == r.y1 * Rational(2));
  CHECK(differentiate(den, 3) == r.y2 * Rational(2));
}

TEST_CASE("normal_form examples") {
  auto reg = make_registry({"x1", "x2"});
  auto x1 = Polynomial::variable(reg, 0);
  auto x2 = Polynomial::variable(reg, 1);
  std::vector<SphereBlock> circle{{{0, 1}}};
  CHECK(normal_form(x1 * x1 + x2 * x2, circle) == Polynomial::constant(reg, 1));
  auto cube = normal_form(x2 * x2 * x2, circle);
  CHECK(cube == x2 - x1 * x1 * x2);
  // both sides agree at exact points of S^1
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    auto a = oracle::sphere_point(rng, 1);
    CHECK(evaluate(x2 * x2 * x2, std::span<const Rational>(a)) == evaluate(cube, std::span<const Rational>(a)));
  }
}

TEST_CASE("normal_form rejects overlapping blocks") {
  auto reg = make_indexed_registry("v", 3);
  std::vector<SphereBlock> blocks{{{0, 1}}, {{1, 2}}};
  CHECK_THROWS_AS(normal_form(Polynomial::variable(reg, 0), blocks), OverlappingBlocks);
  std::vector<SphereBlock> outside{{{0, 5}}};
  CHECK_THROWS_AS(normal_form(Polynomial::variable(reg, 0), outside), UnknownVariable);
}

TEST_CASE("normal_form leaves distinguished exponents at most one") {
  auto terms = oplus_norm_terms(2);
  std::mt19937_64 rng(11);
  auto reg = terms.lhs_numerator.registry();
  for (int i = 0; i < 20; ++i) {
    auto p = oracle::random_polynomial(rng, reg, 6, 4);
    auto nf = normal_form(p, terms.blocks);
    for (const auto& b : terms.blocks) CHECK(nf.degree_in(b.distinguished()) <= 1);
  }
}

TEST_CASE("oplus norm identity reduces to zero over the two sphere blocks") {
  for (std::size_t n : {1u, 2u, 3u}) {
    auto t = oplus_norm_terms(n);
    CHECK(normal_form(t.lhs_minus_rhs(), t.blocks).is_zero());
    CHECK(normal_form(t.lhs_minus_middle(), t.blocks).is_zero());
    CHECK(normal_form(t.middle_minus_rhs(), t.blocks).is_zero());
    CHECK_FALSE(t.lhs_minus_rhs().is_zero());
  }
}

TEST_CASE("evaluate examples") {
  Ring r;
  std::map<VarId, Rational> pt{{0, Rational(3, 5)}, {1, Rational(4, 5)}};
  CHECK(evaluate(r.x1 * r.x1 + r.x2 * r.x2, pt) == 1);
  CHECK_THROWS_AS(evaluate(r.y1, pt), MissingAssignment);

  // oplus denominator at x = y = (0, 1)
  std::vector<Rational> a{0, 1, 0, 1};
  auto d = (r.c(1) + r.x1) * (r.c(1) + r.y1) + r.c(2) - r.x1 * r.y1 * Rational(2) + r.x2 * r.y2 * Rational(2);
  CHECK(evaluate(d, std::span<const Rational>(a)) == 5);
  std::vector<double> af{0, 1, 0, 1};
  CHECK(evaluate_float(d, af) == doctest::Approx(5.0));

  std::mt19937_64 rng(5);
  auto p = oracle::random_polynomial(rng, r.reg);
  std::vector<Rational> zeros(4, 0);
  CHECK(evaluate(p, std::span<const Rational>(zeros)) == p.constant_term());
}

TEST_CASE("dense and map evaluation agree") {
  Ring r;
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 30);
  for (int i = 0; i < 200; ++i) {
    auto p = oracle::random_polynomial(rng, r.reg, 8, 5);
    std::vector<Rational> a(4);
    std::map<VarId, Rational> m;
    for (VarId v = 0; v < 4; ++v) {
      a[v] = Rational(num(rng), den(rng));
      a[v].canonicalize();
      m[v] = a[v];
    }
    CHECK(evaluate(p, std::span<const Rational>(a)) == evaluate(p, m));
  }
}

TEST_CASE("ring axioms on random inputs") {
  Ring r;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    auto p = oracle::random_polynomial(rng, r.reg);
    auto q = oracle::random_polynomial(rng, r.reg);
    auto s = oracle::random_polynomial(rng, r.reg);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p + q) + s == p + (q + s));
    CHECK((p * q) * s == p * (q * s));
    CHECK(p * (q + s) == p * q + p * s);
    CHECK((p - p).is_zero());
    CHECK(add(p, q) == p + q);
    CHECK(mul(p, q) == p * q);
  }
}

TEST_CASE("normal_form is idempotent and sound") {
  auto terms = oplus_norm_terms(1);
  auto reg = terms.lhs_numerator.registry();
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    auto p = oracle::random_polynomial(rng, reg, 6, 5);
    auto nf = normal_form(p, terms.blocks);
    CHECK(normal_form(nf, terms.blocks) == nf);
    auto x = oracle::sphere_point(rng, 1);
    auto y = oracle::sphere_point(rng, 1);
    x.insert(x.end(), y.begin(), y.end());
    CHECK(evaluate(p, std::span<const Rational>(x)) == evaluate(nf, std::span<const Rational>(x)));
  }
}

TEST_CASE("differentiate is linear and satisfies Leibniz") {
  Ring r;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    auto p = oracle::random_polynomial(rng, r.reg);
    auto q = oracle::random_polynomial(rng, r.reg);
    for (VarId v = 0; v < 4; ++v) {
      CHECK(differentiate(p + q * Rational(3, 7), v) == differentiate(p, v) + differentiate(q, v) * Rational(3, 7));
      CHECK(differentiate(p * q, v) == differentiate(p, v) * q + p * differentiate(q, v));
    }
  }
}

TEST_CASE("serialization round trip") {
  Ring r;
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    auto p = oracle::random_polynomial(rng, r.reg, 10, 6);
    auto text = serialize(p);
    auto back = deserialize(text, r.reg);
    CHECK(back == p);
    CHECK(serialize(back) == text);
  }
  auto j = to_json(r.x1 * r.x2 * Rational(-1, 2) + r.c(3));
  CHECK(j.dump() == R"([{"c":"-1/2","m":[[0,1],[1,1]]},{"c":"3/1","m":[]}])");
  CHECK(registry_from_json(to_json(*r.reg))->names() == r.reg->names());
}

TEST_CASE("deserialization rejects malformed input") {
  Ring r;
  CHECK_THROWS_AS(deserialize("{}", r.reg), ParseError);
  CHECK_THROWS_AS(deserialize(R"([{"c":"1/1","m":[[9,1]]}])", r.reg), ParseError);
  CHECK_THROWS_AS(deserialize(R"([{"c":"x","m":[]}])", r.reg), ParseError);
  CHECK_THROWS_AS(deserialize(R"([{"c":"1/1","m":[[0,0]]}])", r.reg), ParseError);
  CHECK_THROWS_AS(deserialize("[", r.reg), ParseError);
}

TEST_CASE("canonical order is graded reverse lexicographic") {
  Ring r;
  auto p = r.x1 * r.x1 + r.x1 * r.x2 + r.x2 * r.x2 + r.x1 + r.y2 + r.c(1);
  const auto& t = p.terms();
  REQUIRE(t.size() == 6);
  // degree 2: x1^2 > x1 x2 > x2^2 (grevlex with x1 > x2 > y1 > y2)
  CHECK(t[0].monomial == Monomial::variable(0, 2));
  CHECK(t[1].monomial == Monomial({{0, 1}, {1, 1}}));
  CHECK(t[2].monomial == Monomial::variable(1, 2));
  CHECK(t[3].monomial == Monomial::variable(0));
  CHECK(t[4].monomial == Monomial::variable(3));
  CHECK(t[5].monomial.is_one());
}

TEST_CASE("substitution and homogenizing substitution") {
  Ring r;
  auto p = r.x1 * r.x1 * r.x2 + r.c(2);
  std::vector<Polynomial> images{r.y1 + r.c(1), r.y2, r.y1, r.y2};
  CHECK(substitute(p, images) == (r.y1 + r.c(1)) * (r.y1 + r.c(1)) * r.y2 + r.c(2));
  // N/D substituted at degree 3: x1^2 x2 + 2 -> N1^2 N2 + 2 D^3
  std::vector<Polynomial> nums{r.y1, r.y2, r.c(0), r.c(0)};
  auto den = r.c(1) + r.y1 * r.y1;
  HomogenizingSubstitution h(nums, den);
  CHECK(h.apply(p, 3) == r.y1 * r.y1 * r.y2 + den * den * den * Rational(2));
  CHECK(h.apply(p, 4) == (r.y1 * r.y1 * r.y2 + den * den * den * Rational(2)) * den);
}

TEST_CASE("complex polynomials") {
  auto reg = make_registry({"u", "v"});
  ComplexPolynomial z(Polynomial::variable(reg, 0), Polynomial::variable(reg, 1));
  auto sq = z * z;
  CHECK(sq.re == Polynomial::variable(reg, 0) * Polynomial::variable(reg, 0) -
                     Polynomial::variable(reg, 1) * Polynomial::variable(reg, 1));
  CHECK((z * z.conj()).im.is_zero());
  CHECK((z * z.conj()).re == z.norm2());
}

}  // TEST_SUITE
