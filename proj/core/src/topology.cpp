#include "regmaps/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "regmaps/errors.hpp"
#include "regmaps/float_eval.hpp"

namespace regmaps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_sphere_self_map(const RationalMap& f, std::size_t min_n) {
  const auto& d = f.domain();
  const auto& c = f.codomain();
  if (d->sampler() != SamplerKind::kSphere || c->sampler() != SamplerKind::kSphere ||
      d->parameter() != c->parameter()) {
    throw InvalidArgument("expected a self-map of a sphere, got " + d->name() + " -> " + c->name());
  }
  if (d->parameter() < min_n) throw InvalidArgument("sphere dimension too small: " + d->name());
}

// Angles f(theta_j) over a uniform partition with `steps` points.
bool accumulate(const CompiledRationalMap& f, std::size_t steps, double& turns) {
  double out[2];
  double prev = 0.0;
  double total = 0.0;
  bool fine = true;
  for (std::size_t j = 0; j <= steps; ++j) {
    double theta = kTwoPi * static_cast<double>(j % steps) / static_cast<double>(steps);
    double x[2] = {std::cos(theta), std::sin(theta)};
    double d = f.evaluate(x, out);
    if (!(std::abs(d) > 1e-12)) throw NumericalFailure("denominator vanishes near theta = " + std::to_string(theta));
    double a = std::atan2(out[1], out[0]);
    if (j == 0) {
      prev = a;
      continue;
    }
    double step = std::remainder(a - prev, kTwoPi);
    if (std::abs(step) >= std::numbers::pi / 2) fine = false;
    total += step;
    prev = a;
  }
  turns = total / kTwoPi;
  return fine;
}

std::vector<double> gaussian_unit_vector(std::uint64_t stream, std::size_t dim) {
  std::mt19937_64 rng(stream);
  std::normal_distribution<double> normal;
  std::vector<double> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& c : v) {
      c = normal(rng);
      norm += c * c;
    }
  } while (norm < 1e-24);
  norm = std::sqrt(norm);
  for (auto& c : v) c /= norm;
  return v;
}

Matrix<Rational> relation_gradients(const Variety& v, std::span<const Rational> a) {
  Matrix<Rational> g(v.relations().size(), v.ambient_dim());
  for (std::size_t r = 0; r < v.relations().size(); ++r)
    for (std::size_t j = 0; j < v.ambient_dim(); ++j)
      g(r, j) = evaluate(differentiate(v.relations()[r], static_cast<VarId>(j)), a);
  return g;
}

// Tangent space at a as the null space of the relation gradients (the whole
// ambient space for affine varieties).
Matrix<Rational> tangent_basis(const Variety& v, std::span<const Rational> a) {
  if (v.relations().empty()) return Matrix<Rational>::identity(v.ambient_dim());
  return null_space(relation_gradients(v, a));
}

}  // namespace

// ---------------------------------------------------------------- winding

WindingResult winding_number(const RationalMap& f, std::size_t initial_steps, std::size_t max_steps) {
  require_sphere_self_map(f, 1);
  if (f.domain()->parameter() != 1) throw InvalidArgument("winding needs a self-map of S^1");
  CompiledRationalMap compiled(f.numerators(), f.denominator());
  WindingResult result;
  for (std::size_t steps = std::max<std::size_t>(initial_steps, 4); steps <= max_steps; steps *= 2) {
    double turns = 0.0;
    if (!accumulate(compiled, steps, turns)) continue;
    double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 1e-6) {
      throw NumericalFailure("accumulated angle is not a whole number of turns: " + std::to_string(turns));
    }
    result.winding = static_cast<long>(rounded);
    result.turns = turns;
    result.steps = steps;
    return result;
  }
  throw NumericalFailure("winding refinement did not reach steps below pi/2");
}

long winding(const RationalMap& f) { return winding_number(f).winding; }

json WindingResult::to_json() const {
  return {{"method", "winding"}, {"rounded", winding}, {"turns", turns}, {"steps", steps}};
}

// ---------------------------------------------------------------- degree

std::vector<double> tangent_frame(std::span<const double> x) {
  const std::size_t dim = x.size();
  const std::size_t n = dim - 1;
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < dim; ++i)
    if (std::abs(x[i]) > std::abs(x[pivot])) pivot = i;

  std::vector<std::vector<double>> basis{std::vector<double>(x.begin(), x.end())};
  for (std::size_t i = 0; i < dim; ++i) {
    if (i == pivot) continue;
    std::vector<double> v(dim, 0.0);
    v[i] = 1.0;
    for (const auto& b : basis) {
      double dot = 0.0;
      for (std::size_t t = 0; t < dim; ++t) dot += v[t] * b[t];
      for (std::size_t t = 0; t < dim; ++t) v[t] -= dot * b[t];
    }
    double norm = 0.0;
    for (double c : v) norm += c * c;
    norm = std::sqrt(norm);
    for (double& c : v) c /= norm;
    basis.push_back(std::move(v));
  }
  RealMatrix full(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) full(i, j) = basis[j][i];
  if (determinant(full) < 0)
    for (double& c : basis[n]) c = -c;

  std::vector<double> frame(dim * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < dim; ++i) frame[i * n + j] = basis[j + 1][i];
  return frame;
}

DegreeEstimate degree_mc(const RationalMap& f, std::size_t samples, std::uint64_t seed, unsigned threads) {
  require_sphere_self_map(f, 2);
  if (samples < 2) throw InvalidArgument("degree_mc needs at least 2 samples");
  const std::size_t dim = f.domain()->ambient_dim();
  const std::size_t n = dim - 1;
  const CompiledRationalMap compiled(f.numerators(), f.denominator());

  std::vector<double> values(samples);
  std::vector<std::size_t> resamples(samples, 0);

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> y(dim), jac(dim * dim), tmp(n * dim);
    RealMatrix m(n, n);
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t stream = stream_seed(seed, i);
      std::vector<double> x;
      for (std::uint64_t attempt = 0;; ++attempt) {
        x = gaussian_unit_vector(attempt == 0 ? stream : stream_seed(stream, attempt), dim);
        double d = compiled.evaluate(x, y);
        if (std::abs(d) > 1e-9 && std::isfinite(d)) break;
        ++resamples[i];
        if (attempt > 1000) throw NumericalFailure("sampler keeps hitting the excluded locus");
      }
      compiled.jacobian(x, jac);
      double norm = 0.0;
      for (double c : y) norm += c * c;
      norm = std::sqrt(norm);
      for (double& c : y) c /= norm;
      auto bx = tangent_frame(x);
      auto by = tangent_frame(y);
      // tmp = B_y^T Df (n x dim)
      std::fill(tmp.begin(), tmp.end(), 0.0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < dim; ++k) {
          double byk = by[k * n + r];
          if (byk == 0.0) continue;
          for (std::size_t c = 0; c < dim; ++c) tmp[r * dim + c] += byk * jac[k * dim + c];
        }
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          double s = 0.0;
          for (std::size_t k = 0; k < dim; ++k) s += tmp[r * dim + k] * bx[k * n + c];
          m(r, c) = s;
        }
      values[i] = determinant(m);
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, samples));
  if (workers <= 1) {
    work(0, samples);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      std::size_t b = w * chunk;
      std::size_t e = std::min(samples, b + chunk);
      pool.emplace_back([&, w, b, e] {
        try {
          work(b, e);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(samples);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(samples - 1));

  DegreeEstimate est;
  est.raw = mean;
  est.rounded = std::lround(mean);
  est.half_width = 3.0 * sd / std::sqrt(static_cast<double>(samples));
  est.samples = samples;
  est.seed = seed;
  for (auto r : resamples) est.resample_count += r;
  est.inconclusive = est.half_width >= 0.5 ||
                     std::abs(mean - static_cast<double>(est.rounded)) > std::max(est.half_width, 1e-9);
  return est;
}

json DegreeEstimate::to_json() const {
  return {{"method", "degree_mc"}, {"estimate", raw},          {"rounded", rounded},
          {"half_width", half_width}, {"samples", samples},    {"seed", seed},
          {"resample_count", resample_count}, {"inconclusive", inconclusive}};
}

// ---------------------------------------------------------------- regular values

RegularValueReport regular_value_probe(const RationalMap& f, const std::vector<PointOnVariety>& fiber,
                                       const std::vector<Rational>& value) {
  if (value.size() != f.codomain()->ambient_dim()) throw InvalidArgument("value has the wrong dimension");
  RegularValueReport report;
  report.value = value;
  const auto jac = jacobian(f);
  const auto codomain_tangent = tangent_basis(*f.codomain(), value);
  report.expected_rank = codomain_tangent.cols();
  report.regular = true;
  for (const auto& a : fiber) {
    if (!same_variety(*a.variety(), *f.domain())) throw VarietyMismatch(f.domain()->name(), a.variety()->name());
    if (evaluate_coordinates(f, a.coordinates()) != value) {
      throw InvalidArgument("fiber point does not map to the claimed value");
    }
    auto domain_tangent = tangent_basis(*f.domain(), a.coordinates());
    // rank of C^T J B equals the rank of the projection of J(T_a) onto T_value
    auto m = codomain_tangent.transpose() * jac.evaluate(a.coordinates()) * domain_tangent;
    auto r = rank(m);
    report.ranks.push_back(r);
    report.regular = report.regular && r == report.expected_rank;
  }
  return report;
}

json RegularValueReport::to_json() const {
  return {{"check", "regular_value"}, {"value", regmaps::to_json(std::span<const Rational>(value))},
          {"expected_rank", expected_rank}, {"ranks", ranks}, {"regular", regular}};
}

// ---------------------------------------------------------------- Radon-Hurwitz

std::size_t phi_count(std::size_t t) {
  std::size_t count = 0;
  for (std::size_t i = 1; i <= t; ++i) {
    auto r = i % 8;
    if (r == 0 || r == 1 || r == 2 || r == 4) ++count;
  }
  return count;
}

RadonHurwitzQuery radon_hurwitz(std::size_t p) {
  if (p < 1) throw InvalidArgument("radon_hurwitz needs p >= 1");
  RadonHurwitzQuery q;
  q.p = p;
  q.phi = phi_count(p - 1);
  if (q.phi > 63) throw InvalidArgument("a_p does not fit in 64 bits for p = " + std::to_string(p));
  q.a_p = std::uint64_t{1} << q.phi;
  return q;
}

json RadonHurwitzQuery::to_json() const { return {{"p", p}, {"phi", phi}, {"a_p", a_p}}; }

CodimPairVerdict check_codim_pair(std::size_t m, std::size_t k) {
  if (m < 1) throw InvalidArgument("check_codim_pair needs m >= 1");
  if (k <= m + 1) throw InvalidArgument("check_codim_pair needs k > m + 1");
  CodimPairVerdict v;
  v.m = m;
  v.k = k;
  v.a = radon_hurwitz(m + 2).a_p;
  v.congruent = (k + 1) % v.a == 0;
  return v;
}

json CodimPairVerdict::to_json() const {
  return {{"m", m}, {"k", k}, {"a_m_plus_2", a}, {"congruent", congruent}};
}

}  // namespace regmaps
