#include <doctest.h>

#include "billiard_knots/realize.hpp"
#include "billiard_knots/serialization.hpp"
#include "oracles.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace bk;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("billiard_knot_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run cli(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const auto err = scratch() / "stderr.txt";
  const std::string cmd =
      std::string("\"") + BILLIARD_KNOT_EXE + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

fs::path write_spec(const std::string& name, const std::string& text) {
  auto path = scratch() / name;
  std::ofstream(path) << text;
  return path;
}

std::string preset_spec(const std::string& preset) { return (fs::path(SPECS_DIR) / (preset + ".json")).string(); }

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("presets listing") {
  auto r = cli("presets");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("figure-eight: (3,2) padded to (3,8)") != std::string::npos);
  CHECK(r.out.find("star-9-3: 3-component link") != std::string::npos);
  std::regex entry("^[a-z0-9-]+: ", std::regex::multiline);
  auto begin = std::sregex_iterator(r.out.begin(), r.out.end(), entry);
  CHECK(std::distance(begin, std::sregex_iterator()) == 9);
  for (const char* name : {"unknot", "trefoil", "figure-eight", "torus-2-5", "torus-3-7", "star-10-3", "star-10-2",
                           "star-9-3", "hopf"})
    CHECK(r.out.find(std::string(name) + ": ") != std::string::npos);
}

TEST_CASE("preset component counts match their descriptions") {
  REQUIRE(presets().size() == 9);
  for (const auto& p : presets()) {
    const int comps = component_count(p.pattern);
    if (comps > 1) {
      CHECK(p.description.find(std::to_string(comps) + "-component link") != std::string::npos);
    } else {
      CHECK(p.description.find("component") == std::string::npos);
    }
  }
  CHECK(component_count(find_preset("star-9-3").pattern) == 3);
  CHECK(pad_to_min_repetitions(find_preset("figure-eight").pattern).repetitions() == 8);
  CHECK(pad_to_min_repetitions(find_preset("hopf").pattern).repetitions() == 6);
  CHECK_THROWS_AS(find_preset("nope"), SpecError);
}

TEST_CASE("spec parsing") {
  using nlohmann::json;
  auto spec = parse_spec(json::parse(R"({"preset": "trefoil"})"));
  CHECK(spec.seed == 42);
  CHECK(spec.delta == Rational(1, 1000));
  CHECK(spec.f_max == 100000);
  CHECK(spec.margin == 1e-3);
  CHECK(spec.precision_bits == 128);

  spec = parse_spec(json::parse(
      R"({"pattern": {"strands": 2, "repetitions": 3, "signs": [[1], [-1], [1]]}, "delta": "1/64", "seed": 7})"));
  REQUIRE(spec.pattern);
  CHECK(spec.pattern->sign(1, 0) == -1);
  CHECK(spec.delta == Rational(1, 64));
  CHECK(parse_spec(spec_to_json(spec)).pattern == spec.pattern);

  CHECK_THROWS_WITH_AS(parse_spec(json::parse(R"({"pattern": {"strands": 1, "repetitions": 3, "signs": [[], [], []]}})")),
                       "strands must be ≥ 2", SpecError);
  CHECK_THROWS_AS(parse_spec(json::parse(R"({})")), SpecError);
  CHECK_THROWS_AS(parse_spec(json::parse(R"({"preset": "trefoil", "pattern": {}})")), SpecError);
  CHECK_THROWS_AS(parse_spec(json::parse(R"({"preset": "trefoil", "seed": -1})")), SpecError);
  CHECK_THROWS_AS(parse_spec(json::parse(R"({"preset": "trefoil", "delta": "0"})")), SpecError);
  CHECK_THROWS_AS(parse_spec(json::parse(R"({"preset": "trefoil", "f_max": 0})")), SpecError);
  CHECK_THROWS_AS(parse_spec(json::parse(R"({"preset": "trefoil", "margin": 0})")), SpecError);
  CHECK_THROWS_AS(parse_spec(json::parse(R"({"preset": "trefoil", "precision_bits": "high"})")), SpecError);
  CHECK_THROWS_AS(parse_spec(json::parse(R"({"pattern": {"strands": 2, "repetitions": 2, "signs": [[1], [2]]}})")),
                  SpecError);
}

TEST_CASE("pd and pattern json round trip") {
  for (const auto& pd : {braid_closure_pd(toric_pattern(2, 3)), oracle::pd_4_1(), braid_closure_pd(toric_pattern(2, 2))})
    CHECK(pd_from_json(pd_to_json(pd)) == pd);
  auto pattern = QuasitoricPattern(3, 2, (SignMatrix(2, 2) << 1, -1, 1, -1).finished());
  CHECK(pattern_from_json(pattern_to_json(pattern)) == pattern);
  CHECK_THROWS_AS(pd_from_json(nlohmann::json::parse(R"({"crossings": [[1, 2, 3]], "signs": [1]})")), ParseError);
}

TEST_CASE("strands = 1 exits 3 with the validation message") {
  auto spec = write_spec("bad.json", R"({"pattern": {"strands": 1, "repetitions": 3, "signs": [[], [], []]}})");
  auto r = cli("realize \"" + spec.string() + "\" --out \"" + (scratch() / "bad").string() + "\"");
  CHECK(r.code == 3);
  CHECK(r.err.find("strands must be ≥ 2") != std::string::npos);
}

TEST_CASE("malformed inputs exit 3") {
  auto spec = write_spec("truncated_spec.json", R"({"preset": "tref)");
  CHECK(cli("realize \"" + spec.string() + "\" --out \"" + (scratch() / "t").string() + "\"").code == 3);
  CHECK(cli("realize \"" + (scratch() / "missing.json").string() + "\" --out x").code == 3);
  CHECK(cli("realize").code == 3);
  CHECK(cli("verify \"" + (scratch() / "missing" / "report.json").string() + "\"").code == 3);
}

TEST_CASE("search exhaustion exits 2") {
  auto r = cli("realize \"" + preset_spec("figure-eight") + "\" --out \"" + (scratch() / "exhausted").string() +
               "\" --fmax 40");
  CHECK(r.code == 2);
  CHECK(r.err.find("constraints") != std::string::npos);
}

TEST_CASE("trefoil realize, determinism and negative controls") {
  const auto a = scratch() / "trefoil_a";
  const auto b = scratch() / "trefoil_b";
  auto r = cli("realize \"" + preset_spec("trefoil") + "\" --out \"" + a.string() + "\" --canonical");
  REQUIRE(r.code == 0);
  REQUIRE(cli("realize \"" + preset_spec("trefoil") + "\" --out \"" + b.string() + "\" --canonical").code == 0);
  for (const char* file : {kReportFile, kTrajectoryFile, kTableFile, kStarFile, kObjFile, kDiagramFile}) {
    CAPTURE(file);
    CHECK(fs::exists(a / file));
    CHECK(slurp(a / file) == slurp(b / file));
  }

  const auto report = read_json_file(a / kReportFile);
  CHECK(report["status"]["certify"] == "pass");
  CHECK(report["status"]["reflection"] == "pass");
  CHECK(report["status"]["independence"] == "pass");
  CHECK_FALSE(report.contains("timings"));
  CHECK(report["invariants"]["constructed_jones"] == oracle::right_trefoil_jones().to_string("t", 2));
  CHECK(report["heights"].size() == 1);
  CHECK(report["crossings"].size() == 5);

  REQUIRE(cli("realize \"" + preset_spec("trefoil") + "\" --out \"" + (scratch() / "timed").string() + "\"").code == 0);
  CHECK(read_json_file(scratch() / "timed" / kReportFile).contains("timings"));

  CHECK(cli("verify \"" + (a / kReportFile).string() + "\"").code == 0);

  SUBCASE("edited z") {
    auto traj = read_json_file(b / kTrajectoryFile);
    auto& points = traj["components"][0]["points"];
    for (auto& p : points)
      if (p["kind"] == "wall") {
        Real z = parse_real(p["position"][2].get<std::string>());
        p["position"][2] = format_real(z > Real(0.5) ? z - Real(0.05) : z + Real(0.05));
        break;
      }
    std::ofstream(b / kTrajectoryFile) << traj.dump(2);
    auto v = cli("verify \"" + (b / kReportFile).string() + "\"");
    CHECK(v.code == 4);
    CHECK(v.err.find("reflection: reflection law violated at vertex ") != std::string::npos);
  }
  SUBCASE("edited line") {
    auto rep = read_json_file(b / kReportFile);
    rep["perturbation"]["lines"][0]["b"] = "1/3";
    std::ofstream(b / kReportFile) << rep.dump(2);
    auto v = cli("verify \"" + (b / kReportFile).string() + "\"");
    CHECK(v.code == 4);
    CHECK(v.err.find("verification failed: ") != std::string::npos);
  }
  SUBCASE("truncated report") {
    const auto text = slurp(b / kReportFile);
    std::ofstream(b / kReportFile, std::ios::binary) << text.substr(0, text.size() / 2);
    CHECK(cli("verify \"" + (b / kReportFile).string() + "\"").code == 3);
  }
  SUBCASE("truncated trajectory") {
    const auto text = slurp(b / kTrajectoryFile);
    std::ofstream(b / kTrajectoryFile, std::ios::binary) << text.substr(0, text.size() - 10);
    CHECK(cli("verify \"" + (b / kReportFile).string() + "\"").code == 3);
  }
}

TEST_CASE("star-10-3 diagram") {
  const auto dir = scratch() / "star-10-3";
  REQUIRE(cli("realize \"" + preset_spec("star-10-3") + "\" --out \"" + dir.string() + "\" --canonical").code == 0);
  const auto svg = slurp(dir / kDiagramFile);
  CHECK(count(svg, "class=\"vertex\"") == 10);
  CHECK(count(svg, "class=\"chord\"") == 10);
  CHECK(count(svg, "class=\"crossing\"") == 20);
  const auto star = read_json_file(dir / kStarFile);
  CHECK(star["vertices"].size() == 10);
  CHECK(star["crossings"].size() == 20);
  CHECK(star["components"].size() == 1);
  CHECK(read_json_file(dir / kReportFile)["status"]["independence"] == "pass");
}

TEST_CASE("every preset round-trips through verify") {
  for (const auto& p : presets()) {
    CAPTURE(p.name);
    const auto dir = scratch() / ("all_" + p.name);
    auto r = cli("realize \"" + preset_spec(p.name) + "\" --out \"" + dir.string() + "\" --canonical");
    CHECK(r.code == 0);
    auto v = cli("verify \"" + (dir / kReportFile).string() + "\"");
    CHECK(v.code == 0);
    CHECK(v.out.find("certify") != std::string::npos);
    const auto obj = slurp(dir / kObjFile);
    CHECK(count(obj, "\nl ") == component_count(p.pattern));
  }
}
