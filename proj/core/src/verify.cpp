#include <algorithm>

#include "regmaps/errors.hpp"
#include "regmaps/rational_map.hpp"

namespace regmaps {

namespace {

bool is_constant_map(const RationalMap& f) {
  return f.denominator().is_constant() &&
         std::all_of(f.numerators().begin(), f.numerators().end(), [](const Polynomial& p) { return p.is_constant(); });
}

bool contains_point(const std::vector<std::vector<Rational>>& points, std::span<const Rational> a) {
  return std::any_of(points.begin(), points.end(),
                     [&](const std::vector<Rational>& p) { return std::equal(p.begin(), p.end(), a.begin(), a.end()); });
}

}  // namespace

MapsIntoReport maps_into(const RationalMap& f, std::size_t trials, std::uint64_t seed) {
  MapsIntoReport report;
  const auto& relations = f.codomain()->relations();
  const auto& domain = f.domain();

  if (relations.empty() || is_constant_map(f)) {
    report.method = "trivial";
    report.passed = true;
    if (!relations.empty()) {
      auto image = evaluate_coordinates(f, std::vector<Rational>(domain->ambient_dim(), 0));
      for (std::size_t r = 0; r < relations.size(); ++r) {
        bool ok = sgn(evaluate(relations[r], std::span<const Rational>(image))) == 0;
        report.relations.push_back({r, ok, ok ? "constant image satisfies relation" : "constant image violates relation"});
        report.passed = report.passed && ok;
      }
    }
    return report;
  }

  if (domain->reducible_by_blocks()) {
    report.method = "symbolic";
    report.passed = true;
    HomogenizingSubstitution h(f.numerators(), f.denominator());
    for (std::size_t r = 0; r < relations.size(); ++r) {
      // R(N/D) * D^deg(R) reduced modulo the domain's sphere ideal
      auto cleared = h.apply(relations[r], relations[r].total_degree());
      auto reduced = normal_form(cleared, domain->sphere_blocks());
      bool ok = reduced.is_zero();
      report.relations.push_back(
          {r, ok, ok ? "reduces to 0" : "normal form has " + std::to_string(reduced.size()) + " nonzero terms"});
      report.passed = report.passed && ok;
    }
    return report;
  }

  report.method = "sampling";
  report.trials = trials;
  report.seed = seed;
  report.passed = true;
  std::vector<bool> relation_ok(relations.size(), true);
  for (std::size_t t = 0; t < trials && report.passed; ++t) {
    auto a = sample_point(domain, stream_seed(seed, t));
    if (sgn(evaluate(f.denominator(), std::span<const Rational>(a.coordinates()))) == 0) continue;
    auto image = evaluate_coordinates(f, a.coordinates());
    for (std::size_t r = 0; r < relations.size(); ++r) {
      if (sgn(evaluate(relations[r], std::span<const Rational>(image))) != 0) {
        relation_ok[r] = false;
        report.passed = false;
        report.witness = a.coordinates();
      }
    }
  }
  for (std::size_t r = 0; r < relations.size(); ++r) {
    report.relations.push_back({r, relation_ok[r], relation_ok[r] ? "vanishes at all samples" : "violated at witness"});
  }
  return report;
}

DenominatorReport denominator_check(const RationalMap& f, std::size_t samples, std::uint64_t seed,
                                    const std::vector<std::vector<Rational>>& probes) {
  DenominatorReport report;
  report.samples = samples;
  report.seed = seed;
  report.positivity_note = f.positivity_note();
  report.passed = true;

  auto record = [&](const std::vector<Rational>& a, bool probe) {
    Rational d = evaluate(f.denominator(), std::span<const Rational>(a));
    if (probe) report.probe_values.push_back(d);
    if (sgn(d) <= 0) {
      if (contains_point(f.excluded_points(), a)) {
        report.excluded.push_back(a);
        return;
      }
      report.failures.push_back(a);
      report.passed = false;
    }
    if (!report.minimum || d < *report.minimum) report.minimum = d;
  };

  if (samples > 0 && f.domain()->sampler() == SamplerKind::kNone) throw NoSampler(f.domain()->name());
  for (std::size_t t = 0; t < samples; ++t) {
    auto a = sample_point(f.domain(), stream_seed(seed, t));
    if (contains_point(f.excluded_points(), a.coordinates())) continue;
    record(a.coordinates(), false);
  }
  for (const auto& p : probes) {
    if (p.size() != f.domain()->ambient_dim()) throw InvalidArgument("probe point has the wrong dimension");
    record(p, true);
  }
  return report;
}

EqualityReport equal_mod(const RationalMap& f, const RationalMap& g, std::size_t trials, std::uint64_t seed,
                         const SamplerOptions& options) {
  if (!same_variety(*f.domain(), *g.domain())) throw VarietyMismatch(f.domain()->name(), g.domain()->name());
  if (!same_variety(*f.codomain(), *g.codomain())) throw VarietyMismatch(f.codomain()->name(), g.codomain()->name());
  EqualityReport report;
  report.trials = trials;
  report.seed = seed;
  report.equal = true;
  for (std::size_t t = 0; t < trials && report.equal; ++t) {
    auto a = sample_point(f.domain(), stream_seed(seed, t), options);
    std::span<const Rational> pt(a.coordinates());
    Rational df = evaluate(f.denominator(), pt);
    Rational dg = evaluate(g.denominator(), pt);
    if (sgn(df) == 0 && sgn(dg) == 0) {
      ++report.vacuous;
      continue;
    }
    for (std::size_t i = 0; i < f.numerators().size(); ++i) {
      Rational diff = evaluate(f.numerators()[i], pt) * dg - evaluate(g.numerators()[i], pt) * df;
      if (sgn(diff) != 0) {
        report.equal = false;
        report.witness = a.coordinates();
        report.witness_coordinate = i;
        break;
      }
    }
    // A vanishing denominator on one side only means the maps differ there.
    if (report.equal && (sgn(df) == 0) != (sgn(dg) == 0)) {
      report.equal = false;
      report.witness = a.coordinates();
    }
  }
  report.soundness =
      "cross-multiplied differences N_f*D_g - N_g*D_f vanished exactly at " + std::to_string(trials - report.vacuous) +
      " independent exact samples; a nonzero polynomial of degree d vanishes at a random point of an S-element grid "
      "with probability at most d/S (Schwartz-Zippel), so each sample bounds the false-equality probability";
  if (!report.equal) report.soundness = "witness found: the maps differ (a single witness is a proof)";
  return report;
}

// ---------------------------------------------------------------- report JSON

json MapsIntoReport::to_json() const {
  json rels = json::array();
  for (const auto& r : relations) rels.push_back({{"relation", r.relation}, {"passed", r.passed}, {"detail", r.detail}});
  json j = {{"check", "maps_into"}, {"passed", passed}, {"method", method}, {"relations", std::move(rels)}};
  if (method == "sampling") {
    j["trials"] = trials;
    j["seed"] = seed;
  }
  if (witness) j["witness"] = regmaps::to_json(std::span<const Rational>(*witness));
  return j;
}

json DenominatorReport::to_json() const {
  json fails = json::array();
  for (const auto& f : failures) fails.push_back(regmaps::to_json(std::span<const Rational>(f)));
  json excl = json::array();
  for (const auto& e : excluded) excl.push_back(regmaps::to_json(std::span<const Rational>(e)));
  json j = {{"check", "denominator"}, {"passed", passed}, {"samples", samples}, {"seed", seed},
            {"failures", std::move(fails)}, {"excluded", std::move(excl)}};
  if (minimum) j["minimum"] = to_fraction_string(*minimum);
  if (!probe_values.empty()) j["probe_values"] = regmaps::to_json(std::span<const Rational>(probe_values));
  if (!positivity_note.empty()) j["positivity_note"] = positivity_note;
  return j;
}

json EqualityReport::to_json() const {
  json j = {{"check", "equal_mod"}, {"equal", equal}, {"trials", trials}, {"seed", seed},
            {"vacuous", vacuous}, {"soundness", soundness}};
  if (witness) j["witness"] = regmaps::to_json(std::span<const Rational>(*witness));
  if (witness_coordinate) j["witness_coordinate"] = *witness_coordinate;
  return j;
}

}  // namespace regmaps
