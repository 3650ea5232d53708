#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "regmaps/serialize.hpp"

using regmaps::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "regmaps");
  std::ostringstream out, err;
  int code = regmaps::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& file) { return std::string(REGMAPS_TEST_DATA) + "/" + file; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("verify oplus passes the norm identity") {
  auto r = run({"verify", "oplus:1", "--trials", "20", "--seed", "7"});
  CHECK(r.code == regmaps::cli::kPass);
  auto j = r.report();
  CHECK(j["passed"] == true);
  CHECK(j["seed"] == 7);
  CHECK(j["maps_into"]["method"] == "symbolic");
  std::size_t identity_checks = 0;
  for (const auto& c : j["identities"]["checks"]) {
    CHECK(c["passed"] == true);
    if (c["name"].get<std::string>().rfind("norm_identity", 0) == 0) ++identity_checks;
  }
  CHECK(identity_checks == 3);
}

TEST_CASE("verify output is a function of the seed") {
  auto a = run({"verify", "s:3", "--trials", "10", "--seed", "3"});
  auto b = run({"verify", "s:3", "--trials", "10", "--seed", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto c = run({"eval", "r-u:2", "--seed", "5"});
  auto d = run({"eval", "r-u:2", "--seed", "5"});
  auto e = run({"eval", "r-u:2", "--seed", "6"});
  CHECK(c.out == d.out);
  CHECK(c.out != e.out);
}

TEST_CASE("verify fails on a non-map") {
  auto r = run({"verify", "jmap:rotation"});
  CHECK(r.code == regmaps::cli::kFailure);
  auto j = r.report();
  CHECK(j["passed"] == false);
  CHECK(j["maps_into"]["passed"] == false);
}

TEST_CASE("degree") {
  auto w = run({"degree", "phi:1"});
  CHECK(w.code == 0);
  CHECK(w.report()["rounded"] == 2);
  CHECK(w.report()["method"] == "winding");
  auto m = run({"degree", "antipodal:2", "--samples", "2000", "--seed", "1"});
  CHECK(m.code == 0);
  CHECK(m.report()["rounded"] == -1);
  CHECK(m.report()["method"] == "degree_mc");
  auto few = run({"degree", "phi:3", "--samples", "10"});
  CHECK(few.code == regmaps::cli::kFailure);
  CHECK(few.report()["inconclusive"] == true);
  auto t1 = run({"degree", "phi:3", "--samples", "500", "--threads", "1"});
  auto t2 = run({"degree", "phi:3", "--samples", "500", "--threads", "2"});
  CHECK(t1.out == t2.out);
  CHECK(run({"degree", "p:3"}).code == regmaps::cli::kUsage);
}

TEST_CASE("rh") {
  auto r = run({"rh", "2"});
  CHECK(r.code == 0);
  CHECK(r.report()["a_p"] == 2);
  CHECK(run({"rh", "9"}).report()["a_p"] == 16);
  auto pair = run({"rh", "1", "7"});
  CHECK(pair.code == 0);
  CHECK(pair.report()["congruent"] == true);
  CHECK(run({"rh", "0"}).code == regmaps::cli::kUsage);
  CHECK(run({"rh", "-3"}).code == regmaps::cli::kUsage);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == regmaps::cli::kUsage);
  CHECK(run({"frobnicate"}).code == regmaps::cli::kUsage);
  CHECK(run({"degree"}).code == regmaps::cli::kUsage);
  CHECK(run({"verify", "oplus:1", "--trials", "many"}).code == regmaps::cli::kUsage);
  auto unknown = run({"build", "no-such-map:3"});
  CHECK(unknown.code == regmaps::cli::kUsage);
  CHECK(unknown.report().contains("error"));
  CHECK(run({"build", "stereo:0"}).code == regmaps::cli::kUsage);
  CHECK(run({"eval", "stereo:1", "--point", "1,2,3"}).code == regmaps::cli::kUsage);
  CHECK(run({"eval", "stereo:1", "--point", "1,1"}).code == regmaps::cli::kUsage);
  CHECK(run({"compose", "stereo:1"}).code == regmaps::cli::kUsage);
  CHECK(run({"compose", "stereo:2", "stereo:1"}).code == regmaps::cli::kUsage);
  CHECK(run({"--help"}).code == regmaps::cli::kPass);
}

TEST_CASE("eval") {
  auto r = run({"eval", "stereo:2", "--point", "-3/5,4/5,0"});
  CHECK(r.code == 0);
  auto j = r.report();
  CHECK(j["image"] == json::array({"2/1", "0/1"}));
  CHECK(j["image_float"][0] == 2.0);
  CHECK_FALSE(j.contains("seed"));
  auto at_pole = run({"eval", "stereo:1", "--point", "-1,0"});
  CHECK(at_pole.code == regmaps::cli::kUsage);
}

TEST_CASE("build and compose") {
  auto b = run({"build", "s:2"});
  CHECK(b.code == 0);
  auto j = b.report();
  CHECK(j["name"] == "s:2");
  CHECK(j["rows"] == 2);
  auto c = run({"compose", "p:2", "s:2"});
  CHECK(c.code == 0);
  auto cj = c.report();
  CHECK(cj["domain"] == "S^1");
  CHECK(cj["codomain"] == "S^1");
  CHECK(cj["name"] == "p:2 o s:2");
  auto three = run({"compose", "stereo:1", "stereo-inv:1", "stereo:1"});
  CHECK(three.code == 0);
  CHECK(three.report()["codomain"] == "R^1");
}

TEST_CASE("output file") {
  auto path = std::filesystem::temp_directory_path() / "regmaps_cli_output.json";
  std::filesystem::remove(path);
  auto r = run({"rh", "5", "--output", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  CHECK(json::parse(in)["a_p"] == 8);
  std::filesystem::remove(path);
  CHECK(run({"build", "oplus:1", "--output", "/no/such/dir/x.json"}).code == regmaps::cli::kUsage);
}

TEST_CASE("map files and variety registries") {
  auto built = run({"eval", data("line_map.json"), "--varieties", data("varieties.json"), "--point", "2,2"});
  CHECK(built.code == 0);
  CHECK(built.report()["image"] == json::array({"4/1"}));
  // the user variety is unknown without the registry
  CHECK(run({"eval", data("line_map.json"), "--point", "2,2"}).code == regmaps::cli::kUsage);
  // (2, 3) is not on the line a = b
  CHECK(run({"eval", data("line_map.json"), "--varieties", data("varieties.json"), "--point", "2,3"}).code ==
        regmaps::cli::kUsage);
  auto v = run({"verify", data("line_map.json"), "--varieties", data("varieties.json")});
  CHECK(v.code == 0);
  auto jm = run({"verify", "jmap:" + data("jmap_rotation2.json")});
  CHECK(jm.code == 0);
  CHECK(jm.report()["maps_into"]["method"] == "symbolic");
  CHECK(run({"build", data("missing.json")}).code == regmaps::cli::kUsage);
  CHECK(run({"build", "oplus:1", "--varieties", data("missing.json")}).code == regmaps::cli::kUsage);
}

}  // TEST_SUITE
