#include "billiard_knots/realize.hpp"
#include "billiard_knots/serialization.hpp"
#include "billiard_knots/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

constexpr int kExitExhausted = 2;
constexpr int kExitSpec = 3;
constexpr int kExitVerify = 4;

struct RealizeArgs {
  std::string spec_file;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> f_max;
  std::optional<double> margin;
  std::optional<unsigned> precision;
  bool canonical = false;
};

int run_realize(const RealizeArgs& args) {
  bk::RealizationSpec spec;
  try {
    spec = bk::parse_spec(bk::read_json_file(args.spec_file));
    if (args.seed) spec.seed = *args.seed;
    if (args.f_max) spec.f_max = *args.f_max;
    if (args.margin) spec.margin = *args.margin;
    if (args.precision) spec.precision_bits = *args.precision;
    spec = bk::parse_spec(bk::spec_to_json(spec));
  } catch (const bk::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpec;
  } catch (const bk::SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpec;
  }

  bk::Realization r;
  try {
    r = bk::realize(spec);
  } catch (const bk::SearchExhausted& e) {
    std::cerr << "error: " << e.what() << "; best assignment met " << e.satisfied << " of " << e.total
              << " constraints\n";
    return kExitExhausted;
  } catch (const std::exception& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerify;
  }

  bk::write_artifacts(r, args.out_dir, args.canonical);
  std::cout << "pattern (" << r.pattern.strands() << "," << r.pattern.repetitions() << "), "
            << r.polygon.chord_count() << " chords, " << r.polygon.crossings.size() << " crossings\n"
            << "delta " << bk::format_rational(r.polygon.delta) << ", mirror margin " << bk::to_double(r.mirror_room.margin)
            << '\n';
  for (std::size_t c = 0; c < r.solution.heights.size(); ++c)
    std::cout << "component " << c << ": f = " << r.solution.heights[c].frequency
              << ", phase = " << bk::to_double(r.solution.heights[c].phase) << '\n';
  std::cout << "independence " << (r.independent() ? "pass" : "fail") << ", reflection "
            << (r.reflection.passed() ? "pass" : "fail") << ", certify " << (r.certificate.passed ? "pass" : "fail")
            << '\n'
            << "jones " << r.certificate.constructed.to_string("t", 2) << '\n'
            << "artifacts written to " << args.out_dir << '\n';
  if (!r.reflection.passed()) {
    std::cerr << "verification failed: reflection: " << r.reflection.violations.front().message << '\n';
    return kExitVerify;
  }
  if (!r.certificate.passed) {
    std::cerr << "verification failed: certify: constructed Jones differs from the intended one\n";
    return kExitVerify;
  }
  return 0;
}

int run_verify(const std::string& report) {
  bk::VerifyOutcome outcome;
  try {
    outcome = bk::verify_report(report);
  } catch (const bk::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpec;
  }
  if (!outcome.passed) {
    std::cerr << "verification failed: " << outcome.failed_check << ": " << outcome.message << '\n';
    return kExitVerify;
  }
  std::cout << "verified:";
  for (const auto& c : outcome.checks_passed) std::cout << ' ' << c;
  std::cout << '\n';
  return 0;
}

void run_presets() {
  for (const auto& p : bk::presets()) {
    std::cout << p.name << ": " << p.description << '\n'
              << "  strands " << p.pattern.strands() << ", repetitions " << p.pattern.repetitions() << ", signs "
              << bk::pattern_to_json(p.pattern)["signs"].dump() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realize quasitoric braid closures as billiard trajectories in a convex prism"};
  app.require_subcommand(1);

  RealizeArgs ra;
  auto* realize = app.add_subcommand("realize", "Run the construction and write artifacts");
  realize->add_option("spec", ra.spec_file, "Spec JSON file")->required();
  realize->add_option("--out", ra.out_dir, "Output directory")->required();
  realize->add_option("--seed", ra.seed, "Perturbation seed");
  realize->add_option("--fmax", ra.f_max, "Largest height frequency to try");
  realize->add_option("--margin", ra.margin, "Height separation margin");
  realize->add_option("--precision", ra.precision, "Working precision in bits");
  realize->add_flag("--canonical", ra.canonical, "Omit timings so the report is byte-reproducible");

  std::string report;
  auto* verify = app.add_subcommand("verify", "Re-check the artifacts of a realization");
  verify->add_option("report", report, "report.json written by realize")->required();

  app.add_subcommand("presets", "List the built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitSpec;
  }
  if (realize->parsed()) return run_realize(ra);
  if (verify->parsed()) return run_verify(report);
  run_presets();
  return 0;
}
