#include "regmaps/sphere_maps.hpp"

#include "regmaps/errors.hpp"

namespace regmaps {

namespace {

void require_dimension(std::size_t n, std::size_t min, const char* what) {
  if (n < min) throw InvalidArgument(std::string(what) + " needs dimension >= " + std::to_string(min));
}

Polynomial var(const VarietyPtr& v, std::size_t i) { return Polynomial::variable(v->registry(), static_cast<VarId>(i)); }
Polynomial constant(const VarietyPtr& v, const Rational& c) { return Polynomial::constant(v->registry(), c); }

std::vector<Rational> minus_e(std::size_t dim) {
  std::vector<Rational> p(dim, 0);
  p[0] = -1;
  return p;
}

}  // namespace

RationalMap stereo(std::size_t n) {
  require_dimension(n, 1, "stereo");
  auto s = sphere(n);
  std::vector<Polynomial> nums;
  for (std::size_t i = 1; i <= n; ++i) nums.push_back(var(s, i));
  RationalMap f(s, affine_space(n), std::move(nums), constant(s, 1) + var(s, 0), "{-e}");
  f.with_excluded_points({minus_e(n + 1)})
      .with_positivity_note("1 + x1 >= 0 on S^n with equality only at -e")
      .with_label("stereo:" + std::to_string(n));
  return f;
}

RationalMap stereo_inv(std::size_t n) {
  require_dimension(n, 1, "stereo_inv");
  auto r = affine_space(n);
  Polynomial norm2(r->registry());
  for (std::size_t i = 0; i < n; ++i) norm2 += var(r, i) * var(r, i);
  std::vector<Polynomial> nums{constant(r, 1) - norm2};
  for (std::size_t i = 0; i < n; ++i) nums.push_back(var(r, i) * Rational(2));
  RationalMap f(r, sphere(n), std::move(nums), constant(r, 1) + norm2, "none");
  f.with_positivity_note("1 + |X|^2 >= 1 everywhere").with_label("stereo-inv:" + std::to_string(n));
  return f;
}

VarietyPtr sphere_pair(std::size_t n) { return product({sphere(n, "x"), sphere(n, "y")}); }

namespace {

// Shared denominator (1 + x1)(1 + y1) + 2 - 2 x1 y1 + 2 sum_{i>=2} x_i y_i.
Polynomial oplus_denominator(const VarietyPtr& d, std::size_t n) {
  auto x1 = var(d, 0);
  auto y1 = var(d, n + 1);
  Polynomial cross(d->registry());
  for (std::size_t i = 1; i <= n; ++i) cross += var(d, i) * var(d, n + 1 + i);
  return (constant(d, 1) + x1) * (constant(d, 1) + y1) + constant(d, 2) - x1 * y1 * Rational(2) + cross * Rational(2);
}

}  // namespace

RationalMap oplus(std::size_t n) {
  require_dimension(n, 1, "oplus");
  auto d = sphere_pair(n);
  auto x1 = var(d, 0);
  auto y1 = var(d, n + 1);
  auto one = constant(d, 1);
  Polynomial cross(d->registry());
  for (std::size_t i = 1; i <= n; ++i) cross += var(d, i) * var(d, n + 1 + i);

  std::vector<Polynomial> nums;
  nums.push_back((one + x1) * (one + y1) - constant(d, 2) + x1 * y1 * Rational(2) - cross * Rational(2));
  for (std::size_t j = 1; j <= n; ++j) {
    nums.push_back(var(d, j) * (one + y1) * Rational(2) + var(d, n + 1 + j) * (one + x1) * Rational(2));
  }
  std::vector<Rational> corner = minus_e(n + 1);
  auto second = minus_e(n + 1);
  corner.insert(corner.end(), second.begin(), second.end());

  RationalMap f(d, sphere(n), std::move(nums), oplus_denominator(d, n), "{(-e, -e)}");
  f.with_excluded_points({corner})
      .with_positivity_note(
          "D = (1+x1)(1+y1) + 2(1 + <x,y'>) with y' = (-y1, y2, ...); both summands are >= 0 on S^n x S^n "
          "(Cauchy-Schwarz) and vanish together only when x = -y', x1 = y1 = -1, i.e. at (-e, -e)")
      .with_label("oplus:" + std::to_string(n));
  return f;
}

RationalMap vector_addition(std::size_t n) {
  require_dimension(n, 1, "vector_addition");
  auto d = product({affine_space(n, "X"), affine_space(n, "Y")});
  std::vector<Polynomial> nums;
  for (std::size_t i = 0; i < n; ++i) nums.push_back(var(d, i) + var(d, n + i));
  return RationalMap(d, affine_space(n), std::move(nums), constant(d, 1)).with_label("+");
}

RationalMap oplus_composed(std::size_t n) {
  auto pair = sphere_pair(n);
  auto plane_pair = product({affine_space(n, "X"), affine_space(n, "Y")});
  auto projections = cartesian_map(stereo(n), stereo(n), pair, plane_pair);
  RationalMap f = compose(stereo_inv(n), compose(vector_addition(n), projections));
  f.with_label("stereo-inv o + o (stereo x stereo)");
  return f;
}

Polynomial OplusNormTerms::lhs_minus_middle() const { return lhs_numerator - middle_numerator; }

Polynomial OplusNormTerms::middle_minus_rhs() const {
  return middle_numerator * rhs_denominator - rhs_numerator * lhs_denominator;
}

Polynomial OplusNormTerms::lhs_minus_rhs() const {
  return lhs_numerator * rhs_denominator - rhs_numerator * lhs_denominator;
}

OplusNormTerms oplus_norm_terms(std::size_t n) {
  require_dimension(n, 1, "oplus_norm_terms");
  auto d = sphere_pair(n);
  auto one = constant(d, 1);
  auto x1 = var(d, 0);
  auto y1 = var(d, n + 1);
  Polynomial squares(d->registry());
  Polynomial cross(d->registry());
  for (std::size_t i = 1; i <= n; ++i) {
    auto xi = var(d, i);
    auto yi = var(d, n + 1 + i);
    auto s = xi * (one + y1) + yi * (one + x1);
    squares += s * s;
    cross += xi * yi;
  }
  auto px = one + x1;
  auto py = one + y1;
  OplusNormTerms t{
      squares,
      (one - x1 * x1) * py * py + cross * px * py * Rational(2) + (one - y1 * y1) * px * px,
      constant(d, 2) - x1 * y1 * Rational(2) + cross * Rational(2),
      px * px * py * py,
      px * py,
      d->sphere_blocks(),
  };
  return t;
}

RationalMap reflect(std::size_t n, std::size_t axis) {
  require_dimension(n, 1, "reflect");
  if (axis < 2 || axis > n + 1) {
    throw InvalidArgument("reflection axis must satisfy 2 <= j <= n+1 (j = 1 would move e)");
  }
  auto s = sphere(n);
  auto m = RationalMatrix::identity(n + 1);
  m(axis - 1, axis - 1) = -1;
  return linear_map(s, s, m).with_label("reflect:" + std::to_string(n) + ":" + std::to_string(axis));
}

RationalMap phi_double(std::size_t k) {
  require_dimension(k, 1, "phi_double");
  auto s = sphere(k);
  auto x1 = var(s, 0);
  std::vector<Polynomial> nums{x1 * x1 * Rational(2) - constant(s, 1)};
  for (std::size_t j = 1; j <= k; ++j) nums.push_back(x1 * var(s, j) * Rational(2));
  return RationalMap(s, s, std::move(nums), constant(s, 1)).with_label("phi:" + std::to_string(k));
}

RationalMap antipodal(std::size_t n) {
  require_dimension(n, 1, "antipodal");
  auto s = sphere(n);
  RationalMatrix m = RationalMatrix::identity(n + 1);
  for (std::size_t i = 0; i <= n; ++i) m(i, i) = -1;
  return linear_map(s, s, m).with_label("antipodal:" + std::to_string(n));
}

RationalMap circle_power(long d) {
  auto s = sphere(1);
  ComplexPolynomial z(var(s, 0), d >= 0 ? var(s, 1) : -var(s, 1));
  ComplexPolynomial w(constant(s, 1), Polynomial(s->registry()));
  for (long i = 0; i < (d >= 0 ? d : -d); ++i) w = w * z;
  return RationalMap(s, s, {w.re, w.im}, constant(s, 1)).with_label("zpow:" + std::to_string(d));
}

RationalMap circle_rotation(const Rational& c, const Rational& s) {
  if (c * c + s * s != 1) throw InvalidArgument("rotation needs c^2 + s^2 = 1");
  auto circle = sphere(1);
  RationalMatrix m(2, 2, std::vector<Rational>{c, -s, s, c});
  return linear_map(circle, circle, m).with_label("rotation");
}

RationalMap pointwise_oplus(const RationalMap& f, const RationalMap& g) {
  const auto& target = f.codomain();
  if (target->sampler() != SamplerKind::kSphere) throw InvalidArgument("pointwise oplus needs maps into a sphere");
  const auto n = target->parameter();
  auto add = oplus(n);
  auto paired = pair_map(f, g, add.domain());
  RationalMap h = compose(add, paired);
  h.with_label(f.label() + " (+) " + g.label());
  return h;
}

}  // namespace regmaps
