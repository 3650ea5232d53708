#pragma once

// Reference implementations that share no code with the library beyond the
// data types: used to cross-check the exact and float paths.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "regmaps/rational_map.hpp"

namespace oracle {

using regmaps::Rational;
using Mat = std::vector<std::vector<Rational>>;

inline Mat to_rows(std::span<const Rational> coords, std::size_t n) {
  Mat m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = coords[i * n + j];
  return m;
}

inline Mat multiply(const Mat& a, const Mat& b) {
  Mat c(a.size(), std::vector<Rational>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat transpose(const Mat& a) {
  Mat t(a[0].size(), std::vector<Rational>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline bool is_identity(const Mat& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

// Permutation expansion; fine for n <= 6.
inline Rational det_leibniz(const Mat& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Complex k x k matrix from realified coordinates (re, im pairs row-major).
struct CMat {
  std::size_t k;
  std::vector<Rational> re, im;
};

inline CMat to_complex(std::span<const Rational> c, std::size_t k) {
  CMat m{k, std::vector<Rational>(k * k), std::vector<Rational>(k * k)};
  for (std::size_t e = 0; e < k * k; ++e) {
    m.re[e] = c[2 * e];
    m.im[e] = c[2 * e + 1];
  }
  return m;
}

// M^* M == I
inline bool is_unitary(const CMat& m) {
  const auto k = m.k;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Rational re = 0, im = 0;
      for (std::size_t l = 0; l < k; ++l) {
        // conj(m_li) * m_lj
        const auto &a = m.re[l * k + i], &b = m.im[l * k + i], &c = m.re[l * k + j], &d = m.im[l * k + j];
        re += a * c + b * d;
        im += a * d - b * c;
      }
      if (re != (i == j ? 1 : 0) || im != 0) return false;
    }
  return true;
}

// Complex determinant by permutation expansion, returned as (re, im).
inline std::pair<Rational, Rational> complex_det(const CMat& m) {
  const std::size_t n = m.k;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational tre = 0, tim = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational re = inversions % 2 ? -1 : 1, im = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto &a = m.re[i * n + perm[i]], &b = m.im[i * n + perm[i]];
      Rational nr = re * a - im * b;
      im = re * b + im * a;
      re = nr;
    }
    tre += re;
    tim += im;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {tre, tim};
}

// Residues 0, 1, 2, 4 mod 8 among 1..t, counted by listing them.
inline std::size_t residue_count(std::size_t t) {
  std::vector<std::size_t> hits;
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t r : {0u, 1u, 2u, 4u})
      if (i % 8 == r) hits.push_back(i);
  return hits.size();
}

// Degree of a circle map from a very fine partition, with no refinement logic.
inline long dense_winding(const regmaps::RationalMap& f, std::size_t steps = 200000) {
  const double two_pi = 2.0 * std::acos(-1.0);
  double total = 0.0, prev = 0.0;
  for (std::size_t j = 0; j <= steps; ++j) {
    double t = two_pi * static_cast<double>(j) / static_cast<double>(steps);
    double x[2] = {std::cos(t), std::sin(t)};
    auto y = regmaps::evaluate_map_float(f, x);
    double a = std::atan2((*y)[1], (*y)[0]);
    if (j > 0) {
      double d = a - prev;
      while (d > two_pi / 2) d -= two_pi;
      while (d < -two_pi / 2) d += two_pi;
      total += d;
    }
    prev = a;
  }
  return std::lround(total / two_pi);
}

// Random polynomial with small integer/rational coefficients.
inline regmaps::Polynomial random_polynomial(std::mt19937_64& rng, const regmaps::RegistryPtr& reg,
                                             std::size_t max_terms = 6, std::uint32_t max_exp = 3) {
  std::uniform_int_distribution<int> coeff(-9, 9), den(1, 5), expo(0, static_cast<int>(max_exp));
  std::uniform_int_distribution<std::size_t> nterms(0, max_terms);
  std::vector<regmaps::Term> terms;
  auto count = nterms(rng);
  for (std::size_t t = 0; t < count; ++t) {
    std::vector<regmaps::Monomial::Power> powers;
    for (regmaps::VarId v = 0; v < reg->size(); ++v) powers.emplace_back(v, static_cast<std::uint32_t>(expo(rng)));
    Rational c(coeff(rng), den(rng));
    c.canonicalize();
    terms.push_back({regmaps::Monomial(std::move(powers)), c});
  }
  return regmaps::Polynomial(reg, std::move(terms));
}

// Exact point on S^n from n random rational parameters, via the explicit
// inverse stereographic formula (no library sampler).
inline std::vector<Rational> sphere_point(std::mt19937_64& rng, std::size_t n, int height = 50) {
  std::uniform_int_distribution<int> num(-height, height), den(1, height);
  std::vector<Rational> t(n);
  Rational s = 0;
  for (auto& v : t) {
    v = Rational(num(rng), den(rng));
    v.canonicalize();
    s += v * v;
  }
  std::vector<Rational> x{(1 - s) / (1 + s)};
  for (auto& v : t) x.push_back(2 * v / (1 + s));
  return x;
}

}  // namespace oracle
