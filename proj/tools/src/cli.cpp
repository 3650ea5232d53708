#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "regmaps/catalog.hpp"
#include "regmaps/errors.hpp"
#include "regmaps/topology.hpp"

namespace regmaps::cli {

namespace {

struct Options {
  std::uint64_t seed = 0;
  std::size_t trials = 20;
  std::size_t samples = 10000;
  unsigned threads = 0;
  std::string point;
  std::string output;
  std::string varieties;
  std::vector<std::string> targets;
  std::vector<long> numbers;
};

std::vector<VarietyPtr> load_varieties(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open variety registry '" + path + "'");
  try {
    return varieties_from_registry_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ParseError("variety registry '" + path + "': " + e.what());
  }
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> p;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) p.push_back(parse_rational(part));
  return p;
}

void emit(const json& report, const Options& opt, std::ostream& out) {
  if (opt.output.empty()) {
    out << report.dump(2) << '\n';
    return;
  }
  std::ofstream file(opt.output);
  if (!file) throw InvalidArgument("cannot write '" + opt.output + "'");
  file << report.dump(2) << '\n';
}

json map_json(const CatalogEntry& e) {
  json j = e.matrix ? to_json(*e.matrix) : to_json(e.map);
  j["name"] = e.name;
  return j;
}

int do_build(const Options& opt, std::ostream& out, std::ostream& err) {
  auto entry = resolve(opt.targets.at(0), load_varieties(opt.varieties));
  emit(map_json(entry), opt, out);
  err << "built " << entry.name << ": " << entry.map.domain()->name() << " -> " << entry.map.codomain()->name()
      << ", " << entry.map.numerators().size() << " coordinates, degree " << entry.map.max_degree() << '\n';
  return kPass;
}

int do_eval(const Options& opt, std::ostream& out, std::ostream& err) {
  auto entry = resolve(opt.targets.at(0), load_varieties(opt.varieties));
  const auto& f = entry.map;
  std::vector<Rational> coords;
  if (opt.point.empty()) {
    coords = sample_point(f.domain(), opt.seed).coordinates();
  } else {
    coords = parse_point(opt.point);
    if (coords.size() != f.domain()->ambient_dim()) {
      throw InvalidArgument("point has " + std::to_string(coords.size()) + " coordinates, " + f.domain()->name() +
                            " needs " + std::to_string(f.domain()->ambient_dim()));
    }
  }
  PointOnVariety a(f.domain(), coords);
  auto image = evaluate_map(f, a);
  json floats = json::array();
  for (double d : image.to_doubles()) floats.push_back(d);
  json report = {{"target", entry.name},
                 {"point", to_json(std::span<const Rational>(a.coordinates()))},
                 {"image", to_json(std::span<const Rational>(image.coordinates()))},
                 {"image_float", floats}};
  if (opt.point.empty()) report["seed"] = opt.seed;
  emit(report, opt, out);
  err << "evaluated " << entry.name << " at a point of " << f.domain()->name() << '\n';
  return kPass;
}

int do_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  auto entry = resolve(opt.targets.at(0), load_varieties(opt.varieties));
  const auto& f = entry.map;
  auto into = maps_into(f, opt.trials, opt.seed);
  const bool can_sample = f.domain()->sampler() != SamplerKind::kNone;
  auto den = denominator_check(f, can_sample ? opt.trials : 0, opt.seed, denominator_probes(f));
  auto suite = identity_suite(entry, opt.trials, opt.seed);
  const bool passed = into.passed && den.passed && suite.passed();
  json report = {{"target", entry.name}, {"seed", opt.seed},          {"trials", opt.trials},
                 {"maps_into", into.to_json()}, {"denominator", den.to_json()}, {"identities", suite.to_json()},
                 {"passed", passed}};
  emit(report, opt, out);
  err << "verify " << entry.name << ": maps_into " << (into.passed ? "pass" : "FAIL") << " (" << into.method
      << "), denominator " << (den.passed ? "pass" : "FAIL") << ", identities "
      << (suite.passed() ? "pass" : "FAIL") << " (" << suite.checks.size() << " checks)\n";
  return passed ? kPass : kFailure;
}

int do_compose(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.targets.size() < 2) throw InvalidArgument("compose needs at least two maps");
  auto varieties = load_varieties(opt.varieties);
  // f1 o f2 o ... o fm: the last map is applied first
  RationalMap h = resolve(opt.targets.back(), varieties).map;
  for (auto it = opt.targets.rbegin() + 1; it != opt.targets.rend(); ++it) h = compose(resolve(*it, varieties).map, h);
  std::string name;
  for (const auto& t : opt.targets) name += (name.empty() ? "" : " o ") + t;
  json j = to_json(h);
  j["name"] = name;
  emit(j, opt, out);
  err << "composed " << name << ": " << h.domain()->name() << " -> " << h.codomain()->name() << ", degree "
      << h.max_degree() << '\n';
  return kPass;
}

int do_degree(const Options& opt, std::ostream& out, std::ostream& err) {
  auto entry = resolve(opt.targets.at(0), load_varieties(opt.varieties));
  const auto& f = entry.map;
  const auto& d = f.domain();
  if (d->sampler() != SamplerKind::kSphere) throw InvalidArgument("degree needs a sphere self-map");
  json report;
  bool ok = true;
  if (d->parameter() == 1) {
    auto w = winding_number(f);
    report = w.to_json();
    err << "winding of " << entry.name << " = " << w.winding << '\n';
  } else {
    auto est = degree_mc(f, opt.samples, opt.seed, opt.threads);
    report = est.to_json();
    ok = !est.inconclusive;
    err << "degree of " << entry.name << " ~ " << est.raw << " +- " << est.half_width << " -> " << est.rounded
        << (ok ? "" : " (inconclusive)") << '\n';
  }
  report["target"] = entry.name;
  emit(report, opt, out);
  return ok ? kPass : kFailure;
}

int do_rh(const Options& opt, std::ostream& out, std::ostream& err) {
  for (long v : opt.numbers)
    if (v < 0) throw InvalidArgument("rh arguments must be nonnegative");
  if (opt.numbers.size() == 1) {
    auto q = radon_hurwitz(static_cast<std::size_t>(opt.numbers[0]));
    emit(q.to_json(), opt, out);
    err << "a_" << q.p << " = " << q.a_p << '\n';
    return kPass;
  }
  if (opt.numbers.size() == 2) {
    auto v = check_codim_pair(static_cast<std::size_t>(opt.numbers[0]), static_cast<std::size_t>(opt.numbers[1]));
    emit(v.to_json(), opt, out);
    err << "k = " << v.k << (v.congruent ? " is" : " is not") << " -1 mod a_" << v.m + 2 << " = " << v.a << '\n';
    return kPass;
  }
  throw InvalidArgument("rh takes p, or m and k");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact regular maps between spheres and matrix groups"};
  app.name("regmaps");
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    sub->add_option("--output", opt.output, "write JSON here instead of stdout");
    sub->add_option("--varieties", opt.varieties, "variety registry JSON for user map files");
  };

  auto* build = app.add_subcommand("build", "emit the map JSON of a catalog name or map file");
  build->add_option("target", opt.targets)->required()->expected(1);
  common(build);

  auto* eval = app.add_subcommand("eval", "exact and float image of a point");
  eval->add_option("target", opt.targets)->required()->expected(1);
  eval->add_option("--point", opt.point, "comma-separated rationals; sampled from --seed when absent");
  common(eval);

  auto* verify = app.add_subcommand("verify", "maps_into, denominator and identity checks");
  verify->add_option("target", opt.targets)->required()->expected(1);
  verify->add_option("--trials", opt.trials, "exact samples per sampled check")->capture_default_str();
  verify->add_option("--samples", opt.samples, "unused by verify; accepted for uniformity");
  common(verify);

  auto* comp = app.add_subcommand("compose", "f1 o f2 o ... (the last map is applied first)");
  comp->add_option("targets", opt.targets)->required()->expected(2, 64);
  common(comp);

  auto* degree = app.add_subcommand("degree", "winding number on S^1, Monte Carlo degree on S^n");
  degree->add_option("target", opt.targets)->required()->expected(1);
  degree->add_option("--samples", opt.samples, "Monte Carlo samples")->capture_default_str();
  degree->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
  common(degree);

  auto* rh = app.add_subcommand("rh", "Radon-Hurwitz number a_p, or the verdict k = -1 mod a_{m+2}");
  rh->add_option("numbers", opt.numbers, "p | m k")->required()->expected(1, 2);
  rh->add_option("--output", opt.output, "write JSON here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*build) return do_build(opt, out, err);
    if (*eval) return do_eval(opt, out, err);
    if (*verify) return do_verify(opt, out, err);
    if (*comp) return do_compose(opt, out, err);
    if (*degree) return do_degree(opt, out, err);
    if (*rh) return do_rh(opt, out, err);
  } catch (const NumericalFailure& e) {
    out << json{{"error", "numerical"}, {"message", e.what()}}.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const Error& e) {
    out << json{{"error", "usage"}, {"message", e.what()}}.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    out << json{{"error", "parse"}, {"message", e.what()}}.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace regmaps::cli
