#include "billiard_knots/perturbation.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>

namespace bk {

namespace {

const Rational& draw_scale() {
  static const Rational scale(Integer(1) << kDrawBits);
  return scale;
}

int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
int sign_of(const Real& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

Rational round_to_grid(const Real& x) {
  Real scaled = x * to_real(draw_scale());
  return Rational(floor_integer(scaled + Real(0.5))) / draw_scale();
}

}  // namespace

Rational crossing_abscissa(const Line& first, const Line& second) {
  if (first.a == second.a) throw CombinatorialCollapse("parallel lines");
  return (first.b - second.b) / (second.a - first.a);
}

Vec2<Rational> line_intersection(const Line& first, const Line& second) {
  Rational x = crossing_abscissa(first, second);
  return {x, first.a * x + first.b};
}

int PerturbedPolygon::component_of_chord(int chord) const {
  for (std::size_t c = 0; c < components.size(); ++c)
    if (std::find(components[c].begin(), components[c].end(), chord) != components[c].end())
      return static_cast<int>(c);
  throw std::out_of_range("chord " + std::to_string(chord) + " not in polygon");
}

int PerturbedPolygon::position_in_component(int chord) const {
  const auto& comp = components[component_of_chord(chord)];
  return static_cast<int>(std::find(comp.begin(), comp.end(), chord) - comp.begin());
}

int PerturbedPolygon::next_chord(int chord) const {
  const auto& comp = components[component_of_chord(chord)];
  return comp[(position_in_component(chord) + 1) % comp.size()];
}

int PerturbedPolygon::prev_chord(int chord) const {
  const auto& comp = components[component_of_chord(chord)];
  return comp[(position_in_component(chord) + comp.size() - 1) % comp.size()];
}

bool PerturbedPolygon::has_signs() const {
  return !crossings.empty() &&
         std::all_of(crossings.begin(), crossings.end(), [](const PolygonCrossing& x) { return x.sign != 0; });
}

std::vector<bool> PerturbedPolygon::first_over() const {
  if (!has_signs()) throw std::logic_error("polygon has no crossing signs");
  std::vector<int> first_chord(crossings.size(), -1), second_chord(crossings.size(), -1);
  for (const auto& comp : components)
    for (int chord : comp)
      for (int id : segment_order[chord]) (first_chord[id] < 0 ? first_chord : second_chord)[id] = chord;
  std::vector<bool> out;
  for (const auto& x : crossings) {
    int orientation = sign_of(cross(direction(first_chord[x.id]), direction(second_chord[x.id])));
    out.push_back((orientation > 0) == (x.sign > 0));
  }
  return out;
}

PlanarDiagram PerturbedPolygon::planar_diagram() const {
  PlanarDiagram out;
  out.crossing_count = static_cast<int>(crossings.size());
  for (const auto& comp : components) {
    std::vector<PlanarPassage> passes;
    for (int chord : comp) {
      Vec2<double> dir(to_double(direction(chord).x()), to_double(direction(chord).y()));
      for (int id : segment_order[chord]) passes.push_back({id, dir});
    }
    out.components.push_back(std::move(passes));
  }
  return out;
}

PerturbedPolygon polygon_from_lines(std::vector<std::vector<int>> components, std::vector<Line> lines) {
  PerturbedPolygon poly;
  poly.components = std::move(components);
  poly.lines = std::move(lines);
  const int n = poly.chord_count();

  std::vector<int> seen(n, 0);
  for (const auto& comp : poly.components) {
    if (comp.size() < 3) throw std::invalid_argument("polygon component needs at least 3 chords");
    for (int chord : comp) {
      if (chord < 0 || chord >= n || seen[chord]++) throw std::invalid_argument("components must partition the chords");
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != n) throw std::invalid_argument("components must partition the chords");

  poly.vertices.resize(n);
  for (int c = 0; c < n; ++c) poly.vertices[c] = line_intersection(poly.lines[poly.prev_chord(c)], poly.lines[c]);
  for (int c = 0; c < n; ++c)
    if (poly.segment_start(c).x() == poly.segment_end(c).x()) throw CombinatorialCollapse("degenerate segment");

  // strictly inside the open x-range of the segment; endpoints are ties
  auto inside = [&](int chord, const Rational& x) {
    const Rational& x0 = poly.segment_start(chord).x();
    const Rational& x1 = poly.segment_end(chord).x();
    if (x == x0 || x == x1) throw CombinatorialCollapse("crossing at a polygon vertex");
    return (x > x0) == (x < x1);
  };

  for (int c = 0; c < n; ++c)
    for (int d = c + 1; d < n; ++d) {
      if (d == poly.next_chord(c) || d == poly.prev_chord(c)) continue;
      if (poly.lines[c].a == poly.lines[d].a) continue;
      Rational x = crossing_abscissa(poly.lines[c], poly.lines[d]);
      bool on_c = inside(c, x);
      bool on_d = inside(d, x);
      if (on_c && on_d) {
        PolygonCrossing crossing;
        crossing.id = static_cast<int>(poly.crossings.size());
        crossing.chord_a = c;
        crossing.chord_b = d;
        crossing.point = {x, poly.lines[c].a * x + poly.lines[c].b};
        poly.crossings.push_back(std::move(crossing));
      }
    }

  poly.segment_order.assign(n, {});
  for (const auto& x : poly.crossings) {
    poly.segment_order[x.chord_a].push_back(x.id);
    poly.segment_order[x.chord_b].push_back(x.id);
  }
  for (int c = 0; c < n; ++c) {
    auto& order = poly.segment_order[c];
    const bool rightward = poly.segment_end(c).x() > poly.segment_start(c).x();
    std::sort(order.begin(), order.end(), [&](int u, int v) {
      const Rational& xu = poly.crossings[u].point.x();
      const Rational& xv = poly.crossings[v].point.x();
      return rightward ? xu < xv : xu > xv;
    });
    for (std::size_t k = 1; k < order.size(); ++k)
      if (poly.crossings[order[k - 1]].point.x() == poly.crossings[order[k]].point.x())
        throw CombinatorialCollapse("two crossings coincide on chord " + std::to_string(c));
  }
  return poly;
}

CombinatorialSignature signature(const StarDiagram& star) {
  CombinatorialSignature sig;
  std::vector<std::pair<std::array<int, 2>, int>> tagged;
  for (const auto& x : star.crossings) {
    int lo = std::min(x.chord_a, x.chord_b), hi = std::max(x.chord_a, x.chord_b);
    tagged.push_back({{lo, hi}, sign_of(cross(star.chord_direction(lo), star.chord_direction(hi)))});
  }
  std::sort(tagged.begin(), tagged.end());
  for (auto& [pair, orientation] : tagged) {
    sig.pairs.push_back(pair);
    sig.orientation.push_back(orientation);
  }
  sig.partners.resize(star.p);
  for (int c = 0; c < star.p; ++c) {
    std::vector<std::pair<Real, int>> along;
    const Vec2<Real>& start = star.vertices[star.chords[c][0]];
    for (const auto& x : star.crossings) {
      if (x.chord_a != c && x.chord_b != c) continue;
      along.emplace_back((x.point - start).dot(star.chord_direction(c)), x.chord_a == c ? x.chord_b : x.chord_a);
    }
    std::sort(along.begin(), along.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
    for (auto& [t, partner] : along) sig.partners[c].push_back(partner);
  }
  return sig;
}

CombinatorialSignature signature(const PerturbedPolygon& polygon) {
  CombinatorialSignature sig;
  std::vector<std::pair<std::array<int, 2>, int>> tagged;
  for (const auto& x : polygon.crossings) {
    int lo = std::min(x.chord_a, x.chord_b), hi = std::max(x.chord_a, x.chord_b);
    tagged.push_back({{lo, hi}, sign_of(cross(polygon.direction(lo), polygon.direction(hi)))});
  }
  std::sort(tagged.begin(), tagged.end());
  for (auto& [pair, orientation] : tagged) {
    sig.pairs.push_back(pair);
    sig.orientation.push_back(orientation);
  }
  sig.partners.resize(polygon.chord_count());
  for (int c = 0; c < polygon.chord_count(); ++c)
    for (int id : polygon.segment_order[c]) {
      const auto& x = polygon.crossings[id];
      sig.partners[c].push_back(x.chord_a == c ? x.chord_b : x.chord_a);
    }
  return sig;
}

bool combinatorially_equivalent(const PerturbedPolygon& a, const PerturbedPolygon& b) {
  return a.components == b.components && signature(a) == signature(b);
}

std::vector<Line> approximate_star_lines(const StarDiagram& star) {
  // cos and sin of the rotation angle share the factor 1/sqrt(1 + tan^2)
  const Real tangent = to_real(kRotationTangent);
  const Real scale = 1 / mp::sqrt(1 + tangent * tangent);
  const Real c = scale, s = tangent * scale;
  auto rotate = [&](const Vec2<Real>& v) { return Vec2<Real>(c * v.x() - s * v.y(), s * v.x() + c * v.y()); };

  std::vector<Line> lines;
  for (const auto& chord : star.chords) {
    Vec2<Real> u = rotate(star.vertices[chord[0]]);
    Vec2<Real> w = rotate(star.vertices[chord[1]]);
    Real slope = (w.y() - u.y()) / (w.x() - u.x());
    Real intercept = u.y() - slope * u.x();
    lines.push_back({round_to_grid(slope), round_to_grid(intercept)});
  }
  return lines;
}

namespace {

bool has_parallel_pair(const std::vector<Line>& lines) {
  std::vector<Rational> slopes;
  for (const auto& line : lines) slopes.push_back(line.a);
  std::sort(slopes.begin(), slopes.end());
  return std::adjacent_find(slopes.begin(), slopes.end()) != slopes.end();
}

PerturbedPolygon with_star_labels(PerturbedPolygon poly, const StarDiagram& star) {
  std::map<std::array<int, 2>, int> id_of;
  for (const auto& x : star.crossings) id_of[{std::min(x.chord_a, x.chord_b), std::max(x.chord_a, x.chord_b)}] = x.id;
  std::vector<int> remap(poly.crossings.size());
  std::vector<PolygonCrossing> relabelled(poly.crossings.size());
  for (const auto& x : poly.crossings) {
    int id = id_of.at({x.chord_a, x.chord_b});
    remap[x.id] = id;
    relabelled[id] = x;
    relabelled[id].id = id;
    relabelled[id].sign = star.crossings[id].sign;
  }
  poly.crossings = std::move(relabelled);
  for (auto& order : poly.segment_order)
    for (int& id : order) id = remap[id];
  return poly;
}

}  // namespace

PerturbedPolygon unperturbed_polygon(const StarDiagram& star) {
  auto poly = polygon_from_lines(star.components, approximate_star_lines(star));
  if (!(signature(poly) == signature(star))) throw CombinatorialCollapse("rounded star lines change the combinatorics");
  return with_star_labels(std::move(poly), star);
}

PerturbedPolygon perturb(const StarDiagram& star, const Rational& delta, std::uint64_t seed) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  const auto base = approximate_star_lines(star);
  const auto target = signature(star);
  std::mt19937_64 rng(seed);
  const std::int64_t half_range = std::int64_t{1} << kDrawBits;
  auto draw = [&] { return Rational(static_cast<std::int64_t>(rng() >> 32) - half_range) / draw_scale(); };

  Rational size = delta;
  for (int halvings = 0; halvings <= kMaxHalvings; ++halvings, size /= 2) {
    std::vector<Line> lines = base;
    for (auto& line : lines) {
      line.a += size * draw();
      line.b += size * draw();
    }
    if (has_parallel_pair(lines)) continue;
    try {
      auto poly = polygon_from_lines(star.components, std::move(lines));
      if (!(signature(poly) == target)) continue;
      poly = with_star_labels(std::move(poly), star);
      poly.delta = size;
      poly.halvings = halvings;
      poly.seed = seed;
      return poly;
    } catch (const CombinatorialCollapse&) {
    }
  }
  throw CombinatorialCollapse("no perturbation preserved the star's combinatorics after " +
                              std::to_string(kMaxHalvings) + " halvings");
}

Real signed_length(const PerturbedPolygon& polygon, int chord, const Vec2<Rational>& point) {
  const Rational& a = polygon.lines[chord].a;
  return mp::sqrt(to_real(1 + a * a)) * to_real(point.x() - polygon.segment_start(chord).x());
}

std::vector<ComponentArcs> arc_length_table(const PerturbedPolygon& polygon) {
  std::vector<ComponentArcs> out;
  for (const auto& comp : polygon.components) {
    ComponentArcs arcs;
    Real total = 0;
    for (int chord : comp) {
      arcs.vertex_arcs.push_back(total);
      for (int id : polygon.segment_order[chord]) {
        arcs.passages.push_back({id, chord, total + mp::abs(signed_length(polygon, chord, polygon.crossings[id].point))});
      }
      total += mp::abs(signed_length(polygon, chord, polygon.segment_end(chord)));
    }
    for (auto& t : arcs.vertex_arcs) t /= total;
    for (auto& pass : arcs.passages) pass.arc /= total;
    arcs.length = total;
    out.push_back(std::move(arcs));
  }
  return out;
}

std::vector<Real> passage_arcs(const ComponentArcs& arcs) {
  std::vector<Real> out;
  for (const auto& pass : arcs.passages) out.push_back(pass.arc);
  return out;
}

}  // namespace bk
