#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cdga/cli.hpp"
#include "cdga/dsl.hpp"
#include "cdga/formality.hpp"
#include "cdga/models.hpp"

using namespace cdga;
using json = nlohmann::ordered_json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path golden_dir() { return CDGA_GOLDEN_DIR; }

// Compares against tests/golden/<stem>.json; CDGA_UPDATE_GOLDEN=1 rewrites the file.
void check_golden(const std::string& stem, const std::vector<std::string>& args) {
  const Run r = run(args);
  const auto path = golden_dir() / (stem + ".json");
  const std::string actual = r.out + "exit " + std::to_string(r.code) + "\n";
  if (const char* up = std::getenv("CDGA_UPDATE_GOLDEN"); up && std::string(up) == "1") {
    std::ofstream(path) << actual;
    return;
  }
  std::ifstream f(path);
  REQUIRE_MESSAGE(f.good(), "missing golden file " << path.string());
  std::stringstream expected;
  expected << f.rdbuf();
  CAPTURE(stem);
  CHECK(actual == expected.str());
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << contents;
  return path;
}

Vector rationals(const json& a) {
  Vector v;
  for (const auto& q : a) v.push_back(parse_rational(q.get<std::string>()));
  return v;
}

// Rebuilds a verdict from its JSON form, so replay sees only what was printed.
FormalityVerdict from_json(const FreeCDGA& a, const json& j) {
  const auto& g = a.generators();
  FormalityVerdict v;
  v.s = j["s"].get<int>();
  const std::string status = j["status"].get<std::string>();
  v.status = status == "S_FORMAL"       ? FormalityStatus::SFormal
             : status == "NOT_S_FORMAL" ? FormalityStatus::NotSFormal
                                        : FormalityStatus::Undecided;
  v.splitting.s = v.s;
  for (const auto& d : j["splitting"]) {
    SplitDegree sd;
    sd.degree = d["degree"].get<int>();
    for (const auto& c : d["C"]) sd.closed.push_back(parse_polynomial(c.get<std::string>(), g));
    for (const auto& n : d["N"]) sd.injective.push_back(parse_polynomial(n.get<std::string>(), g));
    v.splitting.degrees.push_back(sd);
  }
  if (j.contains("phi"))
    for (const auto& e : j["phi"])
      v.phi.push_back({e["generator"].get<std::string>(), e["degree"].get<int>(), rationals(e["class"])});
  if (j.contains("witness")) {
    const auto& w = j["witness"];
    Witness wit;
    wit.element = parse_polynomial(w["element"].get<std::string>(), g);
    wit.degree = w["degree"].get<int>();
    wit.class_coords = rationals(w["class"]);
    v.witness = wit;
    v.witness_level = w["level"].get<int>();
  }
  return v;
}

}  // namespace

TEST_CASE("golden reports for the three examples") {
  const std::vector<std::pair<std::string, std::string>> inputs{
      {"kt", "builtin:kt"}, {"iwasawa", "builtin:iwasawa"}, {"fls", "builtin:fls"}};
  const std::map<std::string, std::string> massey{{"kt", "a1;a1;a2"},
                                                  {"iwasawa", "a1;a1;a1"},
                                                  {"fls", "delta1*delta2;beta;beta;beta"}};
  for (const auto& [name, file] : inputs) {
    check_golden(name + "_validate", {"--json", "validate", file});
    check_golden(name + "_betti", {"--json", "betti", file});
    check_golden(name + "_cohomology", {"--json", "cohomology", file, "--degree", "2"});
    check_golden(name + "_minimal_model", {"--json", "minimal-model", file, "--up-to", "2"});
    check_golden(name + "_formality", {"--json", "formality", file});
    check_golden(name + "_lefschetz", {"--json", "lefschetz", file});
    check_golden(name + "_massey", {"--json", "massey", file, "--classes", massey.at(name)});
    check_golden(name + "_donaldson", {"--json", "donaldson", file});
    check_golden(name + "_example", {"example", name});
    check_golden(name + "_betti_text", {"betti", file});
  }
  check_golden("fls-minimal_formality", {"--json", "formality", "builtin:fls-minimal", "--strict"});
  check_golden("kt_formality_text", {"formality", "builtin:kt"});
  check_golden("fls_lefschetz_text", {"lefschetz", "builtin:fls", "--s", "2"});
}

TEST_CASE("example output piped into betti") {
  const Run ex = run({"example", "iwasawa"});
  REQUIRE(ex.code == 0);
  const Run b = run({"betti", "-"}, ex.out);
  CHECK(b.code == 0);
  CHECK(b.out.find("betti (1,4,8,10,8,4,1)") != std::string::npos);
}

TEST_CASE("formality of kt from a file") {
  const auto path = temp_file("kt.cdga", run({"example", "kt"}).out);
  const Run r = run({"formality", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("NOT_FORMAL") != std::string::npos);
  CHECK(r.out.find("witness a1*a3") != std::string::npos);
  CHECK(r.out.find("robustness") != std::string::npos);
}

TEST_CASE("lefschetz on the solvable example fails at i = 2") {
  const auto path = temp_file("fls.cdga", run({"example", "fls"}).out);
  const Run r = run({"--json", "lefschetz", path.string(), "--s", "2"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK_FALSE(j["passes"].get<bool>());
  CHECK(j["degrees"][2]["killers"] == json::array({"delta1*delta2"}));
}

TEST_CASE("every report of a re-parsed example matches the built-in") {
  for (const std::string name : {"kt", "iwasawa", "fls", "fls-minimal"}) {
    CAPTURE(name);
    const std::string text = run({"example", name}).out;
    for (const std::vector<std::string>& cmd :
         {std::vector<std::string>{"--json", "betti"}, {"--json", "formality"}, {"--json", "lefschetz"},
          {"--json", "donaldson"}, {"--json", "validate"}}) {
      auto from_stdin = cmd, from_builtin = cmd;
      from_stdin.push_back("-");
      from_builtin.push_back("builtin:" + name);
      const Run a = run(from_stdin, text), b = run(from_builtin);
      CHECK(a.code == b.code);
      CHECK(a.out == b.out);
    }
  }
}

TEST_CASE("certificates replay from their JSON form") {
  for (const std::string name : {"kt", "iwasawa", "fls-minimal", "torus4", "cp2"}) {
    CAPTURE(name);
    const FreeCDGA a = builtin(name);
    for (int s = 0; s <= 2; ++s) {
      const Run r = run({"--json", "formality", "builtin:" + name, "--s", std::to_string(s)});
      REQUIRE(r.code == 0);
      const json j = json::parse(r.out);
      const FormalityVerdict v = from_json(a, j["verdict"]);
      CHECK(to_string(v.status) == j["status"].get<std::string>());
      CHECK(verify_certificate(a, v));
    }
  }
  // A certificate replayed against a different algebra fails.
  const json kt = json::parse(run({"--json", "formality", "builtin:kt", "--s", "1"}).out);
  const FreeCDGA t4 = parse_algebra("algebra t dim 4 minimal\ngen a1:1\ngen a2:1\ngen a3:1\ngen a4:1\n");
  CHECK_FALSE(verify_certificate(t4, from_json(t4, kt["verdict"])));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"betti"}).code == cli::kExitUsage);
  CHECK(run({"cohomology", "builtin:kt"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({"betti", "/nonexistent/file.cdga"}).code == cli::kExitNoInput);
  CHECK(run({"formality", "builtin:fls"}).code == cli::kExitError);  // not minimal
  CHECK(run({"betti", "builtin:nothing"}).code == cli::kExitError);
  CHECK(run({"betti", "-"}, "gen a 1\n").code == cli::kExitError);
  CHECK(run({"massey", "builtin:kt", "--classes", "a1;a2;a3"}).code == cli::kExitError);
  CHECK(run({"massey", "builtin:kt", "--classes", "a1;a2"}).code == cli::kExitUsage);

  // Generators known through degree 1 cannot settle 2-formality.
  const std::string truncated = "algebra trunc dim 4 minimal through 1\ngen a:1\ngen b:1\n";
  const Run u = run({"formality", "-", "--s", "2"}, truncated);
  CHECK(u.code == cli::kExitUndecided);
  CHECK(u.out.find("UNDECIDED") != std::string::npos);
}

TEST_CASE("errors in JSON mode are a single document") {
  const Run r = run({"--json", "lefschetz", "builtin:torus3"});
  CHECK(r.code == cli::kExitError);
  const json j = json::parse(r.out);
  CHECK(j["error"]["code"] == "NoSymplecticClass");
}

TEST_CASE("degree cap from the flag and the environment") {
  CHECK(run({"cohomology", "builtin:kt", "--degree", "7"}).code == cli::kExitUsage);  // default cap 4 + 2
  CHECK(run({"--max-degree", "8", "cohomology", "builtin:kt", "--degree", "7"}).code == cli::kExitOk);
  ::setenv("CDGA_MAX_DEGREE", "8", 1);
  CHECK(run({"cohomology", "builtin:kt", "--degree", "7"}).code == cli::kExitOk);
  const Run b = run({"betti", "-"}, "gen x:1\n");
  CHECK(b.out.find("betti (1,1,0,0,0,0,0,0,0)") != std::string::npos);
  ::setenv("CDGA_MAX_DEGREE", "nope", 1);
  CHECK(run({"betti", "builtin:kt"}).code == cli::kExitUsage);
  ::unsetenv("CDGA_MAX_DEGREE");
  CHECK(run({"betti", "-"}, "gen x:1\n").out.find("betti (1,1,0,0,0,0,0,0,0,0,0,0,0)") != std::string::npos);
}
