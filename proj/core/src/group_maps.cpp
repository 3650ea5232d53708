#include "regmaps/group_maps.hpp"

#include "regmaps/errors.hpp"

namespace regmaps {

namespace {

Polynomial var(const VarietyPtr& v, std::size_t i) { return Polynomial::variable(v->registry(), static_cast<VarId>(i)); }
Polynomial constant(const VarietyPtr& v, const Rational& c) { return Polynomial::constant(v->registry(), c); }

std::vector<Rational> minus_e(std::size_t dim) {
  std::vector<Rational> p(dim, 0);
  p[0] = -1;
  return p;
}

std::vector<Polynomial> flatten_complex(const std::vector<ComplexPolynomial>& entries) {
  std::vector<Polynomial> out;
  out.reserve(2 * entries.size());
  for (const auto& z : entries) {
    out.push_back(z.re);
    out.push_back(z.im);
  }
  return out;
}

// Entries of a matrix map as complex polynomials (zero imaginary part for real maps).
std::vector<ComplexPolynomial> complex_entries(const MatrixMap& m) {
  std::vector<ComplexPolynomial> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.complex_entry(i, j));
  return out;
}

}  // namespace

RationalMap first_column(std::size_t n) {
  if (n < 2) throw InvalidArgument("first_column needs n >= 2");
  auto g = special_orthogonal(n);
  std::vector<Polynomial> nums;
  for (std::size_t i = 0; i < n; ++i) nums.push_back(var(g, i * n));
  return RationalMap(g, sphere(n - 1), std::move(nums), constant(g, 1)).with_label("p:" + std::to_string(n));
}

RationalMap first_column_u(std::size_t k) {
  if (k < 1) throw InvalidArgument("first_column_u needs k >= 1");
  auto g = unitary(k);
  std::vector<Polynomial> nums;
  for (std::size_t i = 0; i < k; ++i) {
    nums.push_back(var(g, 2 * (i * k)));
    nums.push_back(var(g, 2 * (i * k) + 1));
  }
  return RationalMap(g, sphere(2 * k - 1), std::move(nums), constant(g, 1)).with_label("p-u:" + std::to_string(k));
}

MatrixMap section_so(std::size_t n) {
  if (n < 2) throw InvalidArgument("section_so needs n >= 2");
  auto s = sphere(n - 1);
  auto den = constant(s, 1) + var(s, 0);
  std::vector<Polynomial> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == 0) {
        entries.push_back(var(s, i) * den);
      } else if (i == 0) {
        entries.push_back(-(var(s, j) * den));
      } else if (i == j) {
        entries.push_back(den - var(s, i) * var(s, i));
      } else {
        entries.push_back(-(var(s, i) * var(s, j)));
      }
    }
  RationalMap base(s, special_orthogonal(n), std::move(entries), den, "{-e}");
  base.with_excluded_points({minus_e(n)})
      .with_positivity_note("1 + x1 >= 0 on S^{n-1} with equality only at -e")
      .with_label("s:" + std::to_string(n));
  return MatrixMap(std::move(base), n, n);
}

MatrixMap section_u(std::size_t k) {
  if (k < 1) throw InvalidArgument("section_u needs k >= 1");
  auto s = sphere(2 * k - 1);
  const auto& reg = s->registry();
  std::vector<ComplexPolynomial> z;
  for (std::size_t j = 0; j < k; ++j) z.emplace_back(var(s, 2 * j), var(s, 2 * j + 1));
  ComplexPolynomial one(constant(s, 1), Polynomial(reg));
  ComplexPolynomial shift = one + z[0];  // 1 + z1
  Polynomial den = shift.norm2();        // |1 + z1|^2 = (1 + u1)^2 + v1^2
  ComplexPolynomial den_c(den, Polynomial(reg));

  std::vector<ComplexPolynomial> entries;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (j == 0) {
        entries.push_back(z[i] * den);
      } else if (i == 0) {
        // -(1 + z1)/(1 + conj z1) conj(z_j) = -(1 + z1)^2 conj(z_j) / |1 + z1|^2
        entries.push_back(-(shift * shift * z[j].conj()));
      } else if (i == j) {
        // 1 - |z_i|^2 / (1 + conj z1) = (|1 + z1|^2 - |z_i|^2 (1 + z1)) / |1 + z1|^2
        entries.push_back(den_c - shift * z[i].norm2());
      } else {
        entries.push_back(-(z[i] * z[j].conj() * shift));
      }
    }
  std::vector<Rational> excluded = minus_e(2 * k);
  RationalMap base(s, unitary(k), flatten_complex(entries), den, "{-e}");
  base.with_excluded_points({excluded})
      .with_positivity_note("|1 + z1|^2 = (1 + u1)^2 + v1^2 vanishes on S^{2k-1} only at z1 = -1, i.e. at -e")
      .with_label("s-u:" + std::to_string(k));
  return MatrixMap(std::move(base), k, k, true);
}

MatrixMap retract_so(std::size_t n) {
  if (n < 3) throw InvalidArgument("retract_so needs n >= 3");
  auto sp = compose(section_so(n).base(), first_column(n));
  const auto& g = sp.domain();
  std::vector<Polynomial> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial e(g->registry());
      for (std::size_t l = 0; l < n; ++l) e += sp.numerators()[l * n + i] * var(g, l * n + j);
      entries.push_back(std::move(e));
    }
  RationalMap base(g, g, std::move(entries), sp.denominator(), "{g : p(g) = -e}");
  base.with_positivity_note("denominator 1 + g11 vanishes on SO(n) only where the first column is -e")
      .with_label("r:" + std::to_string(n));
  return MatrixMap(std::move(base), n, n);
}

MatrixMap retract_u(std::size_t k) {
  if (k < 2) throw InvalidArgument("retract_u needs k >= 2");
  auto section = section_u(k);
  auto sp = compose(section.base(), first_column_u(k));
  MatrixMap s_of_p(sp, k, k, true);
  const auto& g = sp.domain();
  auto sv = complex_entries(s_of_p);
  auto gv = complex_matrix_entries(g->registry(), k);
  std::vector<ComplexPolynomial> entries;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      ComplexPolynomial e(g->registry());
      for (std::size_t l = 0; l < k; ++l) e = e + sv[l * k + i].conj() * gv[l * k + j];
      entries.push_back(std::move(e));
    }
  RationalMap base(g, g, flatten_complex(entries), sp.denominator(), "{g : p(g) = -e}");
  base.with_positivity_note("denominator |1 + g11|^2 vanishes on U(k) only where the first column is -e")
      .with_label("r-u:" + std::to_string(k));
  return MatrixMap(std::move(base), k, k, true);
}

namespace {

// Retraction acting on the lower-right i x i block of an m x m matrix.
RationalMap block_retraction(const VarietyPtr& g, std::size_t m, std::size_t i) {
  const std::size_t o = m - i;
  auto section = section_so(i);
  // x_l -> g_{o+l, o}
  std::vector<Polynomial> images;
  for (std::size_t l = 0; l < i; ++l) images.push_back(var(g, (o + l) * m + o));
  std::vector<Polynomial> s;
  for (const auto& e : section.base().numerators()) s.push_back(substitute(e, images));
  Polynomial den = substitute(section.base().denominator(), images);

  std::vector<Polynomial> entries;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      if (r < o) {
        entries.push_back(var(g, r * m + c) * den);
        continue;
      }
      Polynomial e(g->registry());
      for (std::size_t l = 0; l < i; ++l) e += s[l * i + (r - o)] * var(g, (o + l) * m + c);
      entries.push_back(std::move(e));
    }
  return RationalMap(g, g, std::move(entries), den, "block column " + std::to_string(o + 1) + " equal to -e")
      .with_label("r" + std::to_string(i));
}

}  // namespace

MatrixMap chain_retract(std::size_t m, std::size_t k) {
  if (k < 2 || m <= k) throw InvalidArgument("chain_retract needs m > k >= 2");
  auto g = special_orthogonal(m);
  RationalMap chain = block_retraction(g, m, m);
  for (std::size_t i = m - 1; i > k; --i) chain = compose(block_retraction(g, m, i), chain);
  RationalMap base(g, g, chain.numerators(), chain.denominator(),
                   "some intermediate retraction meets a first block column equal to -e");
  base.with_label("chain:" + std::to_string(m) + ":" + std::to_string(k));
  return MatrixMap(std::move(base), m, m);
}

MatrixMap su_retract(std::size_t k) {
  if (k < 1) throw InvalidArgument("su_retract needs k >= 1");
  auto u = unitary(k);
  auto gv = complex_matrix_entries(u->registry(), k);
  auto det_conj = complex_determinant(gv, k).conj();
  std::vector<ComplexPolynomial> entries;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) entries.push_back(j == 0 ? gv[i * k] * det_conj : gv[i * k + j]);
  RationalMap base(u, special_unitary(k), flatten_complex(entries), constant(u, 1));
  base.with_label("su-retract:" + std::to_string(k));
  return MatrixMap(std::move(base), k, k, true);
}

MatrixMap embed_u_in_so(std::size_t k) {
  if (k < 1) throw InvalidArgument("embed_u_in_so needs k >= 1");
  auto u = unitary(k);
  const std::size_t n = 2 * k;
  std::vector<Polynomial> entries(n * n, Polynomial(u->registry()));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto a = var(u, 2 * (i * k + j));
      auto b = var(u, 2 * (i * k + j) + 1);
      entries[(2 * i) * n + 2 * j] = a;
      entries[(2 * i) * n + 2 * j + 1] = -b;
      entries[(2 * i + 1) * n + 2 * j] = b;
      entries[(2 * i + 1) * n + 2 * j + 1] = a;
    }
  RationalMap base(u, special_orthogonal(n), std::move(entries), constant(u, 1));
  base.with_label("embed-u:" + std::to_string(k));
  return MatrixMap(std::move(base), n, n);
}

RationalMatrix embed_lower_block(const RationalMatrix& h, std::size_t n) {
  if (h.rows() != h.cols() || h.rows() > n) throw InvalidArgument("block does not fit");
  auto m = RationalMatrix::identity(n);
  const auto o = n - h.rows();
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) m(o + i, o + j) = h(i, j);
  return m;
}

GaussianMatrix embed_lower_block(const GaussianMatrix& h, std::size_t n) {
  if (h.rows() != h.cols() || h.rows() > n) throw InvalidArgument("block does not fit");
  auto m = GaussianMatrix::identity(n);
  const auto o = n - h.rows();
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) m(o + i, o + j) = h(i, j);
  return m;
}

// ---------------------------------------------------------------- J-map

void validate(const JMapInput& input, std::size_t q_samples, std::uint64_t seed) {
  const auto& f = input.f;
  if (input.n < 1 || input.k < 1) throw InvalidArgument("J-map needs n >= 1 and k >= 1");
  if (f.complex_entries() || f.rows() != input.k || f.cols() != input.k) {
    throw InvalidArgument("J-map input f must be a real k x k matrix map");
  }
  if (f.base().domain()->ambient_dim() != input.n + 1) {
    throw InvalidArgument("J-map input f must be defined over n + 1 coordinates");
  }
  std::vector<Rational> e(input.n + 1, 0);
  e[0] = 1;
  RationalMatrix at_e;
  try {
    at_e = f.evaluate_real(e);
  } catch (const DenominatorZero&) {
    throw InvalidArgument("J-map input f is undefined at e");
  }
  if (!(at_e == RationalMatrix::identity(input.k))) throw InvalidArgument("J-map input needs f(e) = identity");

  const auto s = sphere(input.n);
  for (std::size_t t = 0; t < q_samples; ++t) {
    auto a = sample_point(s, stream_seed(seed, t));
    if (sgn(evaluate(f.base().denominator(), std::span<const Rational>(a.coordinates()))) <= 0) {
      throw InvalidArgument("J-map denominator Q is not positive on S^n (sample " + std::to_string(t) + ")");
    }
  }
}

RationalMap j_map(const JMapInput& input) {
  validate(input);
  const auto n = input.n;
  const auto k = input.k;
  auto domain = sphere(n + k);
  const auto& reg = domain->registry();
  Polynomial q = reindex(input.f.base().denominator(), reg, 0);
  std::vector<Polynomial> p;
  for (const auto& e : input.f.base().numerators()) p.push_back(reindex(e, reg, 0));

  Polynomial y2(reg);
  for (std::size_t l = 0; l < k; ++l) y2 += var(domain, n + 1 + l) * var(domain, n + 1 + l);
  Polynomial q2 = q * q;

  // 2Q/(Q^2 + |y|^2) (P/Q)^T y = 2 P^T y / (Q^2 + |y|^2)
  std::vector<Polynomial> nums{q2 - y2};
  for (std::size_t i = 0; i < k; ++i) {
    Polynomial c(reg);
    for (std::size_t l = 0; l < k; ++l) c += p[l * k + i] * var(domain, n + 1 + l);
    nums.push_back(c * Rational(2));
  }
  RationalMap g(domain, sphere(k), std::move(nums), q2 + y2, "{Q(x) = 0 and y = 0}: empty on S^{n+k}");
  g.with_positivity_note("Q^2 + |y|^2 > 0 on S^{n+k}: where y = 0, x lies on S^n and Q(x) > 0")
      .with_label("jmap");
  return g;
}

JMapInput jmap_identity_input(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1) throw InvalidArgument("J-map needs n >= 1 and k >= 1");
  auto r = affine_space(n + 1);
  std::vector<Polynomial> entries;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) entries.push_back(constant(r, i == j ? 1 : 0));
  RationalMap f(r, special_orthogonal(k), std::move(entries), constant(r, 1));
  return {MatrixMap(std::move(f), k, k), n, k};
}

JMapInput jmap_rotation_input() {
  auto r = affine_space(2);
  auto x1 = var(r, 0);
  auto x2 = var(r, 1);
  RationalMap f(r, special_orthogonal(2), {x1, -x2, x2, x1}, constant(r, 1));
  return {MatrixMap(std::move(f), 2, 2), 1, 2};
}

JMapInput jmap_rotation_squared_input() {
  auto r = affine_space(2);
  auto x1 = var(r, 0);
  auto x2 = var(r, 1);
  auto c = x1 * x1 - x2 * x2;
  auto s = x1 * x2 * Rational(2);
  RationalMap f(r, special_orthogonal(2), {c, -s, s, c}, x1 * x1 + x2 * x2);
  return {MatrixMap(std::move(f), 2, 2), 1, 2};
}

json to_json(const JMapInput& input) { return {{"f", to_json(input.f)}, {"n", input.n}, {"k", input.k}}; }

JMapInput jmap_input_from_json(const json& j) {
  if (!j.is_object() || !j.contains("f") || !j.contains("n") || !j.contains("k")) {
    throw ParseError("J-map input needs \"f\", \"n\" and \"k\"");
  }
  if (!j["n"].is_number_unsigned() || !j["k"].is_number_unsigned()) throw ParseError("n and k must be positive integers");
  auto f = matrix_map_from_json(j["f"]);
  return {std::move(f), j["n"].get<std::size_t>(), j["k"].get<std::size_t>()};
}

}  // namespace regmaps
