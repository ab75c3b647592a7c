#include "billiard_knots/billiard.hpp"

#include <algorithm>

namespace bk {

std::vector<Vec2<Real>> real_vertices(const std::vector<Vec2<Rational>>& points) {
  std::vector<Vec2<Real>> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(to_real(p));
  return out;
}

std::vector<std::vector<Vec2<Real>>> polygon_vertices(const PerturbedPolygon& polygon) {
  std::vector<std::vector<Vec2<Real>>> out;
  for (const auto& comp : polygon.components) {
    std::vector<Vec2<Real>> points;
    for (int chord : comp) points.push_back(to_real(polygon.segment_start(chord)));
    out.push_back(std::move(points));
  }
  return out;
}

Real polygon_diameter(const PerturbedPolygon& polygon) {
  auto points = real_vertices(polygon.vertices);
  Real best = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, Real((points[i] - points[j]).norm()));
  return best;
}

Real default_mirror_margin(const PerturbedPolygon& polygon) { return Real(1e-12) * polygon_diameter(polygon); }

MirrorRoomReport<Real> mirror_room_check(const PerturbedPolygon& polygon) {
  return mirror_room_check(polygon, default_mirror_margin(polygon));
}

MirrorRoomReport<Real> mirror_room_check(const PerturbedPolygon& polygon, const Real& required) {
  return mirror_room_check<Real>(polygon_vertices(polygon), required);
}

std::vector<Mirror> mirrors(const PerturbedPolygon& polygon) {
  std::vector<Mirror> out;
  for (const auto& comp : polygon.components)
    for (int chord : comp) {
      Mirror m;
      m.vertex = polygon.segment_start(chord);
      m.chord = chord;
      m.normal = internal_bisector(to_real(polygon.segment_start(polygon.prev_chord(chord))), to_real(m.vertex),
                                   to_real(polygon.segment_end(chord)));
      out.push_back(std::move(m));
    }
  return out;
}

Real BilliardTable::floor_depth(const Vec2<Real>& point) const {
  Real depth = 0;
  for (std::size_t k = 0; k < mirrors.size(); ++k) {
    Real v = mirrors[k].normal.dot(point - to_real(mirrors[k].vertex));
    if (k == 0 || v < depth) depth = v;
  }
  return depth;
}

bool BilliardTable::contains(const Vec3<Real>& point, const Real& tol) const {
  return floor_depth(point.head<2>()) >= -tol && point.z() >= -tol && point.z() <= height + tol;
}

namespace {

struct Corner {
  Vec2<Real> point;
  int edge_label;  // constraint supporting the edge leaving this corner, -1 for the bounding box
};

std::vector<Corner> clip(const std::vector<Corner>& poly, const Vec2<Real>& normal, const Vec2<Real>& origin, int label) {
  std::vector<Corner> out;
  const std::size_t n = poly.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Corner& a = poly[j];
    const Corner& b = poly[(j + 1) % n];
    Real fa = normal.dot(a.point - origin);
    Real fb = normal.dot(b.point - origin);
    auto crossing = [&] { return Vec2<Real>(a.point + (b.point - a.point) * (fa / (fa - fb))); };
    if (fa >= 0) {
      out.push_back(a);
      if (fb < 0) out.push_back({crossing(), label});
    } else if (fb >= 0) {
      out.push_back({crossing(), a.edge_label});
    }
  }
  return out;
}

}  // namespace

BilliardTable build_table(const PerturbedPolygon& polygon) {
  auto room = mirror_room_check(polygon);
  if (!room.passed) {
    throw std::invalid_argument("mirror room condition fails at vertex " + std::to_string(room.k) + " against vertex " +
                                std::to_string(room.i));
  }
  BilliardTable table;
  table.mirrors = mirrors(polygon);

  auto points = real_vertices(polygon.vertices);
  Vec2<Real> lo = points[0], hi = points[0];
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Real pad = 10 * std::max(Real(hi.x() - lo.x()), Real(hi.y() - lo.y()));
  lo.array() -= pad;
  hi.array() += pad;
  std::vector<Corner> poly = {{lo, -1}, {Vec2<Real>(hi.x(), lo.y()), -1}, {hi, -1}, {Vec2<Real>(lo.x(), hi.y()), -1}};
  for (std::size_t k = 0; k < table.mirrors.size(); ++k)
    poly = clip(poly, table.mirrors[k].normal, to_real(table.mirrors[k].vertex), static_cast<int>(k));

  // drop slivers left by constraints that only touch at a corner
  const Real eps = Real(1e-30) * pad;
  std::vector<Corner> cleaned;
  for (std::size_t j = 0; j < poly.size(); ++j) {
    const auto& next = poly[(j + 1) % poly.size()];
    if ((next.point - poly[j].point).norm() > eps) cleaned.push_back(poly[j]);
  }

  std::vector<int> supports(table.mirrors.size(), 0);
  for (const auto& c : cleaned) {
    if (c.edge_label < 0) throw UnboundedTable("mirror half-planes do not bound a polygon");
    ++supports[c.edge_label];
    table.corners.push_back(c.point);
    table.edge_mirror.push_back(c.edge_label);
  }
  for (std::size_t k = 0; k < supports.size(); ++k)
    if (supports[k] != 1) {
      throw UnboundedTable("mirror " + std::to_string(k) + " supports " + std::to_string(supports[k]) + " edges");
    }
  return table;
}

namespace {

int nearest_mirror(const BilliardTable& table, const Vec2<Real>& point, Real& distance) {
  int best = -1;
  for (std::size_t k = 0; k < table.mirrors.size(); ++k) {
    Real v = mp::abs(table.mirrors[k].normal.dot(point - to_real(table.mirrors[k].vertex)));
    if (best < 0 || v < distance) {
      distance = v;
      best = static_cast<int>(k);
    }
  }
  return best;
}

}  // namespace

ContactKind classify_contact(const BilliardTable& table, const Vec3<Real>& point, const Real& tol) {
  Real distance;
  nearest_mirror(table, point.head<2>(), distance);
  const bool wall = distance < tol;
  const bool floor = mp::abs(point.z()) < tol;
  const bool ceiling = mp::abs(point.z() - table.height) < tol;
  const int count = int(wall) + int(floor) + int(ceiling);
  if (count > 1) return ContactKind::Edge;
  if (wall) return ContactKind::Wall;
  if (floor) return ContactKind::Floor;
  if (ceiling) return ContactKind::Ceiling;
  return ContactKind::Interior;
}

ReflectionReport verify_reflection(const std::vector<std::vector<Vec3<Real>>>& trajectory, const BilliardTable& table,
                                   const Real& tol) {
  ReflectionReport report;
  const bool many = trajectory.size() > 1;
  for (std::size_t c = 0; c < trajectory.size(); ++c) {
    const auto& pts = trajectory[c];
    const std::size_t n = pts.size();
    auto fail = [&](std::size_t k, const std::string& what) {
      std::string message = what + " at vertex " + std::to_string(k);
      if (many) message += " of component " + std::to_string(c);
      report.violations.push_back({static_cast<int>(c), static_cast<int>(k), message});
    };
    if (n < 2) {
      fail(0, "closed trajectory needs two points");
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const Vec3<Real>& cur = pts[k];
      if (!table.contains(cur, tol)) {
        fail(k, "point outside the prism");
        continue;
      }
      Vec3<Real> din = cur - pts[(k + n - 1) % n];
      Vec3<Real> dout = pts[(k + 1) % n] - cur;
      if (din.norm() == 0 || dout.norm() == 0) {
        fail(k, "repeated point");
        continue;
      }
      din.normalize();
      dout.normalize();
      Vec3<Real> expected;
      switch (classify_contact(table, cur, tol)) {
        case ContactKind::Edge:
          fail(k, "contact with a prism edge");
          continue;
        case ContactKind::Interior:
          expected = din;
          break;
        case ContactKind::Floor:
        case ContactKind::Ceiling:
          expected = reflect<Real, 3>(din, Vec3<Real>(0, 0, 1));
          break;
        case ContactKind::Wall: {
          Real distance;
          const auto& u = table.mirrors[nearest_mirror(table, cur.head<2>(), distance)].normal;
          expected = reflect<Real, 3>(din, Vec3<Real>(u.x(), u.y(), 0));
          break;
        }
      }
      ++report.contacts_checked;
      if ((dout - expected).norm() > tol) fail(k, "reflection law violated");
    }
  }
  return report;
}

}  // namespace bk
