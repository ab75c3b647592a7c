#ifndef BILLIARD_KNOTS_SERIALIZATION_HPP
#define BILLIARD_KNOTS_SERIALIZATION_HPP

#include "billiard_knots/realize.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace bk {

/// Malformed or inconsistent artifact content.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json pattern_to_json(const QuasitoricPattern& pattern);
QuasitoricPattern pattern_from_json(const nlohmann::json& json);

/// {"crossings": [[a, b, c, d], ...], "signs": [...], "free_loops": n}
nlohmann::json pd_to_json(const PDCode& pd);
PDCode pd_from_json(const nlohmann::json& json);

nlohmann::json spec_to_json(const RealizationSpec& spec);
nlohmann::json star_to_json(const StarDiagram& star);

/// Walls keep exact "num/den" coordinates next to their Real position.
nlohmann::json trajectory_to_json(const SpatialTrajectory& trajectory);
/// Components and points only; heights and crossings stay empty.
SpatialTrajectory trajectory_from_json(const nlohmann::json& json);

nlohmann::json table_to_json(const BilliardTable& table);
std::vector<Vec2<Real>> table_corners_from_json(const nlohmann::json& json);

/// Prism walls, floor and ceiling, plus the trajectory as polylines.
std::string prism_obj(const BilliardTable& table, const SpatialTrajectory& trajectory);
/// Star plot: one <circle class="vertex">, <line class="chord"> and
/// <circle class="crossing"> per element, labelled by id.
std::string diagram_svg(const StarDiagram& star);

inline constexpr const char* kReportFile = "report.json";
inline constexpr const char* kTrajectoryFile = "trajectory.json";
inline constexpr const char* kTableFile = "table.json";
inline constexpr const char* kStarFile = "star.json";
inline constexpr const char* kObjFile = "prism.obj";
inline constexpr const char* kDiagramFile = "diagram.svg";

/// Without timings when canonical.
nlohmann::json report_to_json(const Realization& realization, bool canonical);

/// Writes every artifact into `dir` (created if missing) and returns the
/// file names.
std::vector<std::string> write_artifacts(const Realization& realization, const std::filesystem::path& dir,
                                         bool canonical);

/// Parses a whole file; throws ParseError with the path on failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace bk

#endif  // BILLIARD_KNOTS_SERIALIZATION_HPP
