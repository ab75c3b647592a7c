#ifndef BILLIARD_KNOTS_REALIZE_HPP
#define BILLIARD_KNOTS_REALIZE_HPP

#include "billiard_knots/billiard.hpp"
#include "billiard_knots/certify.hpp"
#include "billiard_knots/heights.hpp"
#include "billiard_knots/integer_relation.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bk {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Preset {
  std::string name;
  std::string description;
  QuasitoricPattern pattern;  // before padding
};

const std::vector<Preset>& presets();
/// Throws SpecError for unknown names.
const Preset& find_preset(const std::string& name);

struct RealizationSpec {
  std::string preset;  // empty when `pattern` is set
  std::optional<QuasitoricPattern> pattern;
  std::uint64_t seed = 42;
  Rational delta{1, 1000};
  int f_max = 100000;
  double margin = 1e-3;
  unsigned precision_bits = kDefaultPrecisionBits;
};

inline constexpr int kIndependenceMaxCoeff = 10;
inline constexpr double kIndependenceTolerance = 1e-12;
inline constexpr double kReflectionTolerance = 1e-9;

/// Throws SpecError on malformed or out-of-range fields; pattern validation
/// errors keep their message ("strands must be ≥ 2").
RealizationSpec parse_spec(const nlohmann::json& json);
QuasitoricPattern input_pattern(const RealizationSpec& spec);

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct Realization {
  RealizationSpec spec;
  QuasitoricPattern input = toric_pattern(2, 1);
  QuasitoricPattern pattern = toric_pattern(2, 1);  // padded
  StarDiagram star;
  PerturbedPolygon polygon;
  MirrorRoomReport<Real> mirror_room;
  BilliardTable table;
  std::vector<ComponentArcs> arcs;
  std::vector<IndependenceResult> independence;
  HeightProblem problem;
  HeightSolution solution;
  SpatialTrajectory trajectory;
  ReflectionReport reflection;
  PDCode pd;
  Certificate certificate;
  std::vector<StageTiming> timings;

  bool independent() const;
  bool passed() const { return reflection.passed() && certificate.passed; }
};

/// Runs every stage at spec.precision_bits. Throws SearchExhausted when no
/// heights are found, SpecError on an invalid spec.
Realization realize(const RealizationSpec& spec);

/// Independence of {1, passage arcs} per component, recomputed at the
/// precision the check needs.
std::vector<IndependenceResult> check_independence(const PerturbedPolygon& polygon);

}  // namespace bk

#endif  // BILLIARD_KNOTS_REALIZE_HPP
