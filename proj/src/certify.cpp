#include "billiard_knots/certify.hpp"

#include <algorithm>

namespace bk {

namespace {

struct Segment {
  int component;
  int index;  // position in traversal order
  Vec2<Real> a, b;
  std::vector<std::pair<Real, Real>> profile;  // (parameter along the segment, z)
};

Real z_at(const Segment& seg, const Real& s) {
  const auto& pr = seg.profile;
  auto hi = std::upper_bound(pr.begin(), pr.end(), s, [](const Real& v, const auto& e) { return v < e.first; });
  if (hi == pr.begin()) return pr.front().second;
  if (hi == pr.end()) return pr.back().second;
  auto lo = hi - 1;
  return lo->second + (hi->second - lo->second) * (s - lo->first) / (hi->first - lo->first);
}

}  // namespace

PDCode trajectory_pd(const std::vector<std::vector<Vec3<Real>>>& polylines, const std::vector<std::vector<bool>>& is_wall) {
  std::vector<Segment> segments;
  std::vector<int> first_segment;
  for (std::size_t c = 0; c < polylines.size(); ++c) {
    const auto& pts = polylines[c];
    const auto& wall = is_wall[c];
    std::vector<std::size_t> walls;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (wall[k]) walls.push_back(k);
    if (walls.size() < 3) throw std::invalid_argument("a component needs at least three wall points");
    first_segment.push_back(static_cast<int>(segments.size()));
    for (std::size_t w = 0; w < walls.size(); ++w) {
      const std::size_t from = walls[w];
      const std::size_t to = walls[(w + 1) % walls.size()];
      Segment seg;
      seg.component = static_cast<int>(c);
      seg.index = static_cast<int>(w);
      seg.a = pts[from].head<2>();
      seg.b = pts[to].head<2>();
      const Vec2<Real> d = seg.b - seg.a;
      const Real dd = d.squaredNorm();
      for (std::size_t k = from;; k = (k + 1) % pts.size()) {
        seg.profile.emplace_back(Real((pts[k].head<2>() - seg.a).dot(d) / dd), pts[k].z());
        if (k == to) break;
      }
      seg.profile.back().first = 1;
      segments.push_back(std::move(seg));
    }
  }
  first_segment.push_back(static_cast<int>(segments.size()));

  struct Pass {
    int crossing;
    Real s;
    Real z;
  };
  std::vector<std::vector<Pass>> on_segment(segments.size());
  int crossings = 0;
  for (std::size_t i = 0; i < segments.size(); ++i)
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      const Segment &u = segments[i], &v = segments[j];
      if (u.component == v.component) {
        const int m = first_segment[u.component + 1] - first_segment[u.component];
        const int gap = (v.index - u.index + m) % m;
        if (gap == 1 || gap == m - 1) continue;
      }
      const Vec2<Real> du = u.b - u.a, dv = v.b - v.a;
      const Real denom = cross(du, dv);
      if (denom == 0) continue;
      const Real s = cross<Real>(v.a - u.a, dv) / denom;
      const Real r = cross<Real>(v.a - u.a, du) / denom;
      if (s <= 0 || s >= 1 || r <= 0 || r >= 1) continue;
      on_segment[i].push_back({crossings, s, z_at(u, s)});
      on_segment[j].push_back({crossings, r, z_at(v, r)});
      ++crossings;
    }

  PlanarDiagram diagram;
  diagram.crossing_count = crossings;
  std::vector<Real> first_z(crossings), second_z(crossings);
  std::vector<int> seen(crossings, 0);
  for (std::size_t c = 0; c < polylines.size(); ++c) {
    std::vector<PlanarPassage> passes;
    for (int i = first_segment[c]; i < first_segment[c + 1]; ++i) {
      auto list = on_segment[i];
      std::sort(list.begin(), list.end(), [](const Pass& x, const Pass& y) { return x.s < y.s; });
      const Vec2<double> dir = to_double(Vec2<Real>(segments[i].b - segments[i].a));
      for (const auto& pass : list) {
        passes.push_back({pass.crossing, dir});
        (seen[pass.crossing]++ == 0 ? first_z : second_z)[pass.crossing] = pass.z;
      }
    }
    diagram.components.push_back(std::move(passes));
  }
  std::vector<bool> first_over(crossings);
  for (int x = 0; x < crossings; ++x) {
    if (first_z[x] == second_z[x]) throw std::invalid_argument("strands meet at equal height");
    first_over[x] = first_z[x] > second_z[x];
  }
  return extract_pd(diagram, first_over);
}

PDCode trajectory_pd(const SpatialTrajectory& trajectory) {
  std::vector<std::vector<bool>> wall;
  for (const auto& comp : trajectory.components) {
    std::vector<bool> flags;
    for (const auto& p : comp) flags.push_back(p.kind == TrajectoryPoint::Kind::Wall);
    wall.push_back(std::move(flags));
  }
  return trajectory_pd(trajectory.polylines(), wall);
}

Certificate certify(const PDCode& constructed, const QuasitoricPattern& pattern) {
  Certificate out;
  const PDCode intended = braid_closure_pd(pattern);
  out.crossings = constructed.size();
  out.constructed = jones(constructed, constructed.writhe());
  out.intended = jones_skein(intended, intended.writhe());
  out.constructed_components = constructed.component_count();
  out.intended_components = component_count(pattern);
  out.passed = out.constructed == out.intended && out.constructed_components == out.intended_components;
  return out;
}

Certificate certify(const SpatialTrajectory& trajectory, const QuasitoricPattern& pattern) {
  return certify(trajectory_pd(trajectory), pattern);
}

}  // namespace bk
