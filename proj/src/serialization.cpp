#include "billiard_knots/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bk {

using nlohmann::json;

namespace {

std::string fixed(double v, const char* format = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  std::string s = buf;
  return s == "-0.000000" ? "0.000000" : s;
}

json rational_pair(const Vec2<Rational>& v) { return json::array({format_rational(v.x()), format_rational(v.y())}); }

json real_array(const Vec3<Real>& v) { return json::array({format_real(v.x()), format_real(v.y()), format_real(v.z())}); }

const char* status_name(RelationStatus s) {
  switch (s) {
    case RelationStatus::Independent: return "independent";
    case RelationStatus::Relation: return "relation";
    default: return "inconclusive";
  }
}

const char* kind_name(TrajectoryPoint::Kind k) {
  switch (k) {
    case TrajectoryPoint::Kind::Wall: return "wall";
    case TrajectoryPoint::Kind::Floor: return "floor";
    default: return "ceiling";
  }
}

const char* pass(bool ok) { return ok ? "pass" : "fail"; }

template <typename F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

json pattern_to_json(const QuasitoricPattern& pattern) {
  json rows = json::array();
  for (int r = 0; r < pattern.repetitions(); ++r) {
    json row = json::array();
    for (int c = 0; c < pattern.strands() - 1; ++c) row.push_back(pattern.sign(r, c));
    rows.push_back(row);
  }
  return {{"strands", pattern.strands()}, {"repetitions", pattern.repetitions()}, {"signs", rows}};
}

QuasitoricPattern pattern_from_json(const json& j) {
  return guarded("pattern", [&] {
    const int k = j.at("strands").get<int>();
    const int n = j.at("repetitions").get<int>();
    const auto& rows = j.at("signs");
    if (k < 2 || n < 1 || static_cast<int>(rows.size()) != n) throw std::invalid_argument("inconsistent shape");
    SignMatrix signs(n, k - 1);
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(rows.at(r).size()) != k - 1) throw std::invalid_argument("inconsistent shape");
      for (int c = 0; c < k - 1; ++c) signs(r, c) = rows.at(r).at(c).get<int>();
    }
    return QuasitoricPattern(k, n, signs);
  });
}

json pd_to_json(const PDCode& pd) {
  return {{"crossings", pd.crossings()}, {"signs", pd.signs()}, {"free_loops", pd.free_loops()}};
}

PDCode pd_from_json(const json& j) {
  return guarded("pd", [&] {
    return PDCode(j.at("crossings").get<std::vector<std::array<int, 4>>>(), j.at("signs").get<std::vector<int>>(),
                  j.value("free_loops", 0));
  });
}

json spec_to_json(const RealizationSpec& spec) {
  json j;
  if (spec.pattern)
    j["pattern"] = pattern_to_json(*spec.pattern);
  else
    j["preset"] = spec.preset;
  j["seed"] = spec.seed;
  j["delta"] = format_rational(spec.delta);
  j["f_max"] = spec.f_max;
  j["margin"] = spec.margin;
  j["precision_bits"] = spec.precision_bits;
  return j;
}

json star_to_json(const StarDiagram& star) {
  json vertices = json::array();
  for (const auto& v : star.vertices) vertices.push_back({to_double(v.x()), to_double(v.y())});
  json crossings = json::array();
  for (const auto& c : star.crossings) {
    crossings.push_back({{"id", c.id},
                         {"chords", {c.chord_a, c.chord_b}},
                         {"gap", c.gap},
                         {"sector", c.sector},
                         {"depth", c.depth},
                         {"point", {to_double(c.point.x()), to_double(c.point.y())}},
                         {"braid_row", c.braid_row},
                         {"braid_col", c.braid_col},
                         {"sign", c.sign},
                         {"components", {c.first_component, c.second_component}},
                         {"arcs", {to_double(c.first_passage_arc), to_double(c.second_passage_arc)}}});
  }
  return {{"p", star.p},
          {"q", star.q},
          {"vertices", vertices},
          {"chords", star.chords},
          {"components", star.components},
          {"crossings", crossings}};
}

json trajectory_to_json(const SpatialTrajectory& trajectory) {
  json comps = json::array();
  for (std::size_t c = 0; c < trajectory.components.size(); ++c) {
    json points = json::array();
    for (const auto& p : trajectory.components[c]) {
      json point = {{"kind", kind_name(p.kind)}, {"chord", p.chord}, {"arc", format_real(p.arc)},
                    {"position", real_array(p.position)}};
      if (p.kind == TrajectoryPoint::Kind::Wall) point["xy"] = rational_pair(p.wall_xy);
      points.push_back(point);
    }
    json comp = {{"points", points}};
    if (c < trajectory.heights.size())
      comp["height"] = {{"frequency", trajectory.heights[c].frequency},
                        {"phase", format_real(trajectory.heights[c].phase)}};
    comps.push_back(comp);
  }
  return {{"components", comps}};
}

SpatialTrajectory trajectory_from_json(const json& j) {
  return guarded("trajectory", [&] {
    SpatialTrajectory t;
    for (const auto& comp : j.at("components")) {
      std::vector<TrajectoryPoint> points;
      for (const auto& pj : comp.at("points")) {
        TrajectoryPoint p;
        const auto kind = pj.at("kind").get<std::string>();
        if (kind == "wall")
          p.kind = TrajectoryPoint::Kind::Wall;
        else if (kind == "floor")
          p.kind = TrajectoryPoint::Kind::Floor;
        else if (kind == "ceiling")
          p.kind = TrajectoryPoint::Kind::Ceiling;
        else
          throw std::invalid_argument("unknown point kind '" + kind + "'");
        const auto& pos = pj.at("position");
        if (pos.size() != 3) throw std::invalid_argument("position needs three coordinates");
        p.position = Vec3<Real>(parse_real(pos[0].get<std::string>()), parse_real(pos[1].get<std::string>()),
                                parse_real(pos[2].get<std::string>()));
        p.arc = parse_real(pj.at("arc").get<std::string>());
        p.chord = pj.at("chord").get<int>();
        if (p.kind == TrajectoryPoint::Kind::Wall) {
          const auto& xy = pj.at("xy");
          if (xy.size() != 2) throw std::invalid_argument("xy needs two coordinates");
          p.wall_xy = Vec2<Rational>(parse_rational(xy[0].get<std::string>()), parse_rational(xy[1].get<std::string>()));
        }
        points.push_back(std::move(p));
      }
      t.components.push_back(std::move(points));
    }
    return t;
  });
}

json table_to_json(const BilliardTable& table) {
  json mirrors = json::array();
  for (const auto& m : table.mirrors)
    mirrors.push_back({{"chord", m.chord},
                       {"vertex", rational_pair(m.vertex)},
                       {"normal", {format_real(m.normal.x()), format_real(m.normal.y())}}});
  json corners = json::array();
  for (const auto& c : table.corners) corners.push_back({format_real(c.x()), format_real(c.y())});
  return {{"height", format_real(table.height)},
          {"mirrors", mirrors},
          {"corners", corners},
          {"edge_mirror", table.edge_mirror}};
}

std::vector<Vec2<Real>> table_corners_from_json(const json& j) {
  return guarded("table", [&] {
    std::vector<Vec2<Real>> out;
    for (const auto& c : j.at("corners")) {
      if (c.size() != 2) throw std::invalid_argument("corner needs two coordinates");
      out.emplace_back(parse_real(c[0].get<std::string>()), parse_real(c[1].get<std::string>()));
    }
    return out;
  });
}

std::string prism_obj(const BilliardTable& table, const SpatialTrajectory& trajectory) {
  std::ostringstream out;
  const std::size_t n = table.corners.size();
  out << "o prism\n";
  for (double z : {0.0, 1.0})
    for (const auto& c : table.corners)
      out << "v " << fixed(to_double(c.x()), "%.12g") << ' ' << fixed(to_double(c.y()), "%.12g") << ' ' << z << '\n';
  out << 'f';
  for (std::size_t i = n; i-- > 0;) out << ' ' << i + 1;
  out << "\nf";
  for (std::size_t i = 0; i < n; ++i) out << ' ' << n + i + 1;
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    out << "f " << i + 1 << ' ' << j + 1 << ' ' << n + j + 1 << ' ' << n + i + 1 << '\n';
  }
  std::size_t base = 2 * n;
  for (std::size_t c = 0; c < trajectory.components.size(); ++c) {
    const auto& pts = trajectory.components[c];
    out << "o trajectory_" << c << '\n';
    for (const auto& p : pts)
      out << "v " << fixed(to_double(p.position.x()), "%.12g") << ' ' << fixed(to_double(p.position.y()), "%.12g")
          << ' ' << fixed(to_double(p.position.z()), "%.12g") << '\n';
    out << 'l';
    for (std::size_t k = 0; k < pts.size(); ++k) out << ' ' << base + k + 1;
    out << ' ' << base + 1 << '\n';
    base += pts.size();
  }
  return out.str();
}

std::string diagram_svg(const StarDiagram& star) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.2 -1.2 2.4 2.4\" width=\"480\" height=\"480\">\n"
      << "<g transform=\"scale(1,-1)\" stroke-width=\"0.01\">\n";
  for (std::size_t c = 0; c < star.chords.size(); ++c) {
    const auto& a = star.vertices[star.chords[c][0]];
    const auto& b = star.vertices[star.chords[c][1]];
    out << "<line class=\"chord\" data-id=\"" << c << "\" data-component=\"" << star.component_of_chord(int(c))
        << "\" x1=\"" << fixed(to_double(a.x())) << "\" y1=\"" << fixed(to_double(a.y())) << "\" x2=\""
        << fixed(to_double(b.x())) << "\" y2=\"" << fixed(to_double(b.y())) << "\" stroke=\"black\"/>\n";
  }
  for (std::size_t v = 0; v < star.vertices.size(); ++v)
    out << "<circle class=\"vertex\" data-id=\"" << v << "\" cx=\"" << fixed(to_double(star.vertices[v].x()))
        << "\" cy=\"" << fixed(to_double(star.vertices[v].y())) << "\" r=\"0.03\" fill=\"black\"/>\n";
  for (const auto& c : star.crossings)
    out << "<circle class=\"crossing\" data-id=\"" << c.id << "\" data-sector=\"" << c.sector << "\" data-depth=\""
        << c.depth << "\" data-sign=\"" << c.sign << "\" cx=\"" << fixed(to_double(c.point.x())) << "\" cy=\""
        << fixed(to_double(c.point.y())) << "\" r=\"0.02\" fill=\"" << (c.sign < 0 ? "blue" : "red") << "\"/>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

json report_to_json(const Realization& r, bool canonical) {
  const bool mirror_ok = r.mirror_room.passed;
  json status = {{"perturbation", "pass"},
                 {"mirror_room", pass(mirror_ok)},
                 {"table", "pass"},
                 {"independence", pass(r.independent())},
                 {"heights", "pass"},
                 {"reflection", pass(r.reflection.passed())},
                 {"certify", pass(r.certificate.passed)}};

  json lines = json::array();
  for (const auto& l : r.polygon.lines) lines.push_back({{"a", format_rational(l.a)}, {"b", format_rational(l.b)}});

  json independence = json::array();
  for (std::size_t c = 0; c < r.independence.size(); ++c) {
    const auto& res = r.independence[c];
    json witness = json::array();
    for (const auto& w : res.witness) witness.push_back(w.str());
    independence.push_back({{"component", c},
                            {"status", status_name(res.status)},
                            {"witness", witness},
                            {"residual", format_real(res.residual)},
                            {"norm_bound", format_real(res.norm_bound)},
                            {"digits", res.digits}});
  }

  json heights = json::array();
  for (std::size_t c = 0; c < r.solution.heights.size(); ++c) {
    const auto& h = r.solution.heights[c];
    heights.push_back({{"component", c},
                       {"frequency", h.frequency},
                       {"phase", format_real(h.phase)},
                       {"z0", format_real(h.start_height())}});
  }

  json crossings = json::array();
  for (const auto& ch : r.trajectory.crossings) {
    const auto& pc = r.polygon.crossings[ch.crossing];
    crossings.push_back({{"id", ch.crossing},
                         {"chords", {pc.chord_a, pc.chord_b}},
                         {"point", rational_pair(pc.point)},
                         {"sign", pc.sign},
                         {"components", {ch.first_component, ch.second_component}},
                         {"arcs", {format_real(ch.first_arc), format_real(ch.second_arc)}},
                         {"heights", {format_real(ch.first_z), format_real(ch.second_z)}},
                         {"over", ch.first_over ? "first" : "second"}});
  }

  json violations = json::array();
  for (const auto& v : r.reflection.violations)
    violations.push_back({{"component", v.component}, {"vertex", v.vertex}, {"message", v.message}});

  json j = {
      {"spec", spec_to_json(r.spec)},
      {"input_pattern", pattern_to_json(r.input)},
      {"pattern", pattern_to_json(r.pattern)},
      {"status", status},
      {"perturbation",
       {{"delta", format_rational(r.polygon.delta)},
        {"halvings", r.polygon.halvings},
        {"seed", r.polygon.seed},
        {"components", r.polygon.components},
        {"lines", lines}}},
      {"mirror_room",
       {{"passed", mirror_ok}, {"margin", format_real(r.mirror_room.margin)}, {"k", r.mirror_room.k}, {"i", r.mirror_room.i}}},
      {"independence", independence},
      {"heights", heights},
      {"search", {{"min_slack", r.solution.min_slack}, {"candidates", r.solution.candidates}}},
      {"crossings", crossings},
      {"reflection", {{"contacts_checked", r.reflection.contacts_checked}, {"violations", violations}}},
      {"invariants",
       {{"constructed_jones", r.certificate.constructed.to_string("t", 2)},
        {"intended_jones", r.certificate.intended.to_string("t", 2)},
        {"constructed_components", r.certificate.constructed_components},
        {"intended_components", r.certificate.intended_components},
        {"crossings", r.certificate.crossings},
        {"writhe", r.pd.writhe()}}},
      {"pd", pd_to_json(r.pd)},
      {"artifacts",
       {{"trajectory", kTrajectoryFile},
        {"table", kTableFile},
        {"star", kStarFile},
        {"obj", kObjFile},
        {"diagram", kDiagramFile}}},
  };
  if (!canonical) {
    json timings = json::array();
    for (const auto& t : r.timings) timings.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
    j["timings"] = timings;
  }
  return j;
}

std::vector<std::string> write_artifacts(const Realization& r, const std::filesystem::path& dir, bool canonical) {
  std::filesystem::create_directories(dir);
  write_text(dir / kReportFile, report_to_json(r, canonical).dump(2) + "\n");
  write_text(dir / kTrajectoryFile, trajectory_to_json(r.trajectory).dump(2) + "\n");
  write_text(dir / kTableFile, table_to_json(r.table).dump(2) + "\n");
  write_text(dir / kStarFile, star_to_json(r.star).dump(2) + "\n");
  write_text(dir / kObjFile, prism_obj(r.table, r.trajectory));
  write_text(dir / kDiagramFile, diagram_svg(r.star));
  return {kReportFile, kTrajectoryFile, kTableFile, kStarFile, kObjFile, kDiagramFile};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace bk
