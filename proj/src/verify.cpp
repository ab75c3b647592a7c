#include "billiard_knots/verify.hpp"

#include "billiard_knots/serialization.hpp"

namespace bk {

using nlohmann::json;

namespace {

struct CheckFailed {
  std::string check;
  std::string message;
};

template <typename F>
auto parsing(F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string xy_text(const Vec2<Rational>& v) { return "(" + format_rational(v.x()) + ", " + format_rational(v.y()) + ")"; }

}  // namespace

VerifyOutcome verify_report(const std::filesystem::path& report_path) {
  const json report = read_json_file(report_path);
  const auto dir = report_path.parent_path();
  const unsigned bits = parsing([&] { return report.at("spec").value("precision_bits", kDefaultPrecisionBits); });
  PrecisionScope scope(bits);

  const QuasitoricPattern pattern = pattern_from_json(parsing([&] { return report.at("pattern"); }));
  const auto [components, lines] = parsing([&] {
    const auto& pj = report.at("perturbation");
    auto comps = pj.at("components").get<std::vector<std::vector<int>>>();
    std::vector<Line> ls;
    for (const auto& l : pj.at("lines"))
      ls.push_back({parse_rational(l.at("a").get<std::string>()), parse_rational(l.at("b").get<std::string>())});
    return std::make_pair(comps, ls);
  });
  const auto& artifacts = parsing([&] { return report.at("artifacts"); });
  SpatialTrajectory trajectory =
      trajectory_from_json(read_json_file(dir / parsing([&] { return artifacts.at("trajectory").get<std::string>(); })));
  const auto stored_corners =
      table_corners_from_json(read_json_file(dir / parsing([&] { return artifacts.at("table").get<std::string>(); })));
  const auto stored_heights = parsing([&] {
    std::vector<SawtoothHeight> hs;
    for (const auto& h : report.at("heights"))
      hs.push_back({h.at("frequency").get<int>(), parse_real(h.at("phase").get<std::string>())});
    return hs;
  });
  const std::string stored_jones = parsing([&] { return report.at("invariants").at("constructed_jones").get<std::string>(); });

  VerifyOutcome out;
  auto pass = [&](const char* name) { out.checks_passed.emplace_back(name); };
  try {
    PerturbedPolygon polygon;
    try {
      polygon = polygon_from_lines(components, lines);
    } catch (const std::exception& e) {
      throw CheckFailed{"polygon", e.what()};
    }
    pass("polygon");

    const auto room = mirror_room_check(polygon);
    if (!room.passed)
      throw CheckFailed{"mirror_room", "mirror at vertex " + std::to_string(room.k) + " does not contain vertex " +
                                           std::to_string(room.i)};
    pass("mirror_room");

    BilliardTable table;
    try {
      table = build_table(polygon);
    } catch (const std::exception& e) {
      throw CheckFailed{"table", e.what()};
    }
    if (table.corners.size() != stored_corners.size())
      throw CheckFailed{"table", "stored table has " + std::to_string(stored_corners.size()) + " corners, rebuilt " +
                                     std::to_string(table.corners.size())};
    const Real table_tol = Real(1e-12) * (1 + polygon_diameter(polygon));
    for (std::size_t k = 0; k < table.corners.size(); ++k)
      if ((table.corners[k] - stored_corners[k]).norm() > table_tol)
        throw CheckFailed{"table", "corner " + std::to_string(k) + " differs from the rebuilt table"};
    pass("table");

    if (trajectory.components.size() != polygon.components.size())
      throw CheckFailed{"walls", "trajectory has " + std::to_string(trajectory.components.size()) +
                                     " components, polygon " + std::to_string(polygon.components.size())};
    const Real tol(kReflectionTolerance);
    for (std::size_t c = 0; c < trajectory.components.size(); ++c) {
      std::size_t w = 0;
      const auto& chords = polygon.components[c];
      for (std::size_t k = 0; k < trajectory.components[c].size(); ++k) {
        const auto& p = trajectory.components[c][k];
        if (p.kind != TrajectoryPoint::Kind::Wall) continue;
        const std::string where = "wall point " + std::to_string(k) + " of component " + std::to_string(c);
        if (w >= chords.size() || p.chord != chords[w])
          throw CheckFailed{"walls", where + " is out of traversal order"};
        if (p.wall_xy != polygon.vertices[p.chord])
          throw CheckFailed{"walls", where + " is not the exact vertex " + xy_text(polygon.vertices[p.chord])};
        if ((Vec2<Real>(p.position.head<2>()) - to_real(p.wall_xy)).norm() > tol)
          throw CheckFailed{"walls", where + " has a position away from its exact vertex"};
        ++w;
      }
      if (w != chords.size()) throw CheckFailed{"walls", "component " + std::to_string(c) + " misses wall points"};
    }
    pass("walls");

    const auto polylines = trajectory.polylines();
    const auto reflection = verify_reflection(polylines, table, tol);
    if (!reflection.passed()) throw CheckFailed{"reflection", reflection.violations.front().message};
    pass("reflection");

    if (stored_heights.size() != trajectory.components.size())
      throw CheckFailed{"heights", "report lists " + std::to_string(stored_heights.size()) + " height functions"};
    for (std::size_t c = 0; c < trajectory.components.size(); ++c)
      for (std::size_t k = 0; k < trajectory.components[c].size(); ++k) {
        const auto& p = trajectory.components[c][k];
        if (p.kind == TrajectoryPoint::Kind::Wall &&
            mp::abs(evaluate_sawtooth(stored_heights[c], p.arc) - p.position.z()) > tol)
          throw CheckFailed{"heights", "wall point " + std::to_string(k) + " of component " + std::to_string(c) +
                                           " is off its height function"};
      }
    pass("heights");

    std::vector<std::vector<bool>> is_wall;
    for (const auto& comp : trajectory.components) {
      std::vector<bool> flags;
      for (const auto& p : comp) flags.push_back(p.kind == TrajectoryPoint::Kind::Wall);
      is_wall.push_back(std::move(flags));
    }
    Certificate cert;
    try {
      cert = certify(trajectory_pd(polylines, is_wall), pattern);
    } catch (const std::exception& e) {
      throw CheckFailed{"certify", e.what()};
    }
    if (!cert.passed)
      throw CheckFailed{"certify", "trajectory Jones " + cert.constructed.to_string("t", 2) + " differs from " +
                                       cert.intended.to_string("t", 2)};
    if (cert.constructed.to_string("t", 2) != stored_jones)
      throw CheckFailed{"certify", "reported Jones " + stored_jones + " differs from the trajectory's"};
    pass("certify");
    out.passed = true;
  } catch (const CheckFailed& f) {
    out.failed_check = f.check;
    out.message = f.message;
  }
  return out;
}

}  // namespace bk
