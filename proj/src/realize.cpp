#include "billiard_knots/realize.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

namespace bk {

namespace {

SignMatrix column(std::initializer_list<int> values) {
  SignMatrix s(static_cast<Eigen::Index>(values.size()), 1);
  int i = 0;
  for (int v : values) s(i++, 0) = v;
  return s;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = [] {
    SignMatrix eight(2, 2);
    eight << 1, -1, 1, -1;
    return std::vector<Preset>{
        {"unknot", "(2,1) padded to (2,5)", toric_pattern(2, 1)},
        {"trefoil", "(2,5) signs ++++-", QuasitoricPattern(2, 5, column({1, 1, 1, 1, -1}))},
        {"figure-eight", "(3,2) padded to (3,8)", QuasitoricPattern(3, 2, eight)},
        {"torus-2-5", "(2,5) all positive", toric_pattern(2, 5)},
        {"torus-3-7", "(3,7) all positive", toric_pattern(3, 7)},
        {"star-10-3", "(3,10) all positive, star {10/3}", toric_pattern(3, 10)},
        {"star-10-2", "2-component link, (2,10) all positive, star {10/2}", toric_pattern(2, 10)},
        {"star-9-3", "3-component link, (3,9) all positive, star {9/3}", toric_pattern(3, 9)},
        {"hopf", "2-component link, (2,2) padded to (2,6)", toric_pattern(2, 2)},
    };
  }();
  return list;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw SpecError("unknown preset '" + name + "'");
}

namespace {

template <typename T>
T field(const nlohmann::json& json, const char* key, const T& fallback) {
  if (!json.contains(key)) return fallback;
  try {
    return json.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SpecError(std::string("field '") + key + "' has the wrong type");
  }
}

QuasitoricPattern parse_pattern(const nlohmann::json& json) {
  if (!json.is_object()) throw SpecError("pattern must be an object");
  const int strands = field<int>(json, "strands", 0);
  if (strands < 2) throw SpecError("strands must be ≥ 2");
  const int repetitions = field<int>(json, "repetitions", 0);
  if (repetitions < 1) throw SpecError("repetitions must be ≥ 1");
  if (!json.contains("signs") || !json["signs"].is_array()) throw SpecError("pattern needs a signs matrix");
  const auto& rows = json["signs"];
  if (static_cast<int>(rows.size()) != repetitions) throw SpecError("signs must have one row per repetition");
  SignMatrix signs(repetitions, strands - 1);
  for (int r = 0; r < repetitions; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != strands - 1)
      throw SpecError("every signs row needs strands - 1 entries");
    for (int c = 0; c < strands - 1; ++c) {
      if (!rows[r][c].is_number_integer()) throw SpecError("signs must be +1 or -1");
      signs(r, c) = rows[r][c].get<int>();
    }
  }
  try {
    return QuasitoricPattern(strands, repetitions, signs);
  } catch (const std::domain_error& e) {
    throw SpecError(e.what());
  }
}

}  // namespace

RealizationSpec parse_spec(const nlohmann::json& json) {
  if (!json.is_object()) throw SpecError("spec must be a JSON object");
  RealizationSpec spec;
  const bool has_preset = json.contains("preset");
  const bool has_pattern = json.contains("pattern");
  if (has_preset == has_pattern) throw SpecError("spec needs exactly one of 'preset' and 'pattern'");
  if (has_preset) {
    spec.preset = field<std::string>(json, "preset", "");
    find_preset(spec.preset);
  } else {
    spec.pattern = parse_pattern(json["pattern"]);
  }
  if (json.contains("seed")) {
    if (!json["seed"].is_number_unsigned())
      throw SpecError("seed must be a non-negative integer");
    spec.seed = json["seed"].get<std::uint64_t>();
  }
  if (json.contains("delta")) {
    try {
      spec.delta = parse_rational(field<std::string>(json, "delta", ""));
    } catch (const std::invalid_argument& e) {
      throw SpecError(std::string("delta: ") + e.what());
    }
    if (spec.delta <= 0) throw SpecError("delta must be positive");
  }
  spec.f_max = field<int>(json, "f_max", spec.f_max);
  if (spec.f_max < 1) throw SpecError("f_max must be positive");
  spec.margin = field<double>(json, "margin", spec.margin);
  if (!(spec.margin > 0 && spec.margin < 0.5)) throw SpecError("margin must lie in (0, 1/2)");
  spec.precision_bits = field<unsigned>(json, "precision_bits", spec.precision_bits);
  if (spec.precision_bits < 64) throw SpecError("precision_bits must be at least 64");
  return spec;
}

QuasitoricPattern input_pattern(const RealizationSpec& spec) {
  if (spec.pattern) return *spec.pattern;
  return find_preset(spec.preset).pattern;
}

bool Realization::independent() const {
  return std::all_of(independence.begin(), independence.end(), [](const auto& r) { return r.passed(); });
}

std::vector<IndependenceResult> check_independence(const PerturbedPolygon& polygon) {
  const Integer bound(kIndependenceMaxCoeff);
  const Real tol(kIndependenceTolerance);
  std::size_t largest = 0;
  for (const auto& comp : polygon.components) {
    std::size_t passages = 0;
    for (int chord : comp) passages += polygon.segment_order[chord].size();
    largest = std::max(largest, passages);
  }
  PrecisionScope scope(digits10_to_bits(required_digits(largest + 1, bound, tol) + 8));
  auto arcs = arc_length_table(polygon);
  std::vector<IndependenceResult> out;
  for (const auto& comp : arcs) out.push_back(independence_check(passage_arcs(comp), bound, Real(kIndependenceTolerance)));
  return out;
}

Realization realize(const RealizationSpec& spec) {
  PrecisionScope scope(spec.precision_bits);
  Realization r;
  r.spec = spec;
  r.input = input_pattern(spec);
  r.pattern = pad_to_min_repetitions(r.input);
  auto stage = [&](const char* name, const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    body();
    r.timings.push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
  };

  stage("star", [&] { r.star = assign_braid_letters(build_star(r.pattern.repetitions(), r.pattern.strands()), r.pattern); });
  stage("perturbation", [&] { r.polygon = perturb(r.star, spec.delta, spec.seed); });
  stage("mirror_room", [&] { r.mirror_room = mirror_room_check(r.polygon); });
  stage("table", [&] { r.table = build_table(r.polygon); });
  stage("arcs", [&] { r.arcs = arc_length_table(r.polygon); });
  stage("independence", [&] { r.independence = check_independence(r.polygon); });
  stage("heights", [&] {
    r.problem = height_problem(r.polygon, r.arcs);
    r.solution = search_heights(r.problem, {spec.f_max, spec.margin});
  });
  stage("trajectory", [&] { r.trajectory = emit_trajectory(r.polygon, r.arcs, r.problem, r.solution.heights); });
  stage("reflection",
        [&] { r.reflection = verify_reflection(r.trajectory.polylines(), r.table, Real(kReflectionTolerance)); });
  stage("certify", [&] {
    r.pd = trajectory_pd(r.trajectory);
    r.certificate = certify(r.pd, r.pattern);
  });
  return r;
}

}  // namespace bk
