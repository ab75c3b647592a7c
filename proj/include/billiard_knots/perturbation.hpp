#ifndef BILLIARD_KNOTS_PERTURBATION_HPP
#define BILLIARD_KNOTS_PERTURBATION_HPP

#include "billiard_knots/numeric.hpp"
#include "billiard_knots/planar_diagram.hpp"
#include "billiard_knots/star_diagram.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bk {

/// y = a x + b
struct Line {
  Rational a;
  Rational b;
};

/// Abscissa of the intersection of two non-parallel lines.
Rational crossing_abscissa(const Line& first, const Line& second);
Vec2<Rational> line_intersection(const Line& first, const Line& second);

struct PolygonCrossing {
  int id = 0;
  int chord_a = 0;
  int chord_b = 0;
  Vec2<Rational> point;
  int sign = 0;
};

/// Closed polygon(s) cut out by one line per chord. Chord c runs from
/// vertices[c] = line(prev c) ∩ line(c) to vertices[next c].
struct PerturbedPolygon {
  std::vector<std::vector<int>> components;  // chords in traversal order
  std::vector<Line> lines;                   // indexed by chord
  std::vector<Vec2<Rational>> vertices;      // start vertex of each chord
  std::vector<PolygonCrossing> crossings;
  std::vector<std::vector<int>> segment_order;  // crossing ids along each chord, in travel order

  Rational delta;  // accepted perturbation size, 0 for unperturbed lines
  int halvings = 0;
  std::uint64_t seed = 0;

  int chord_count() const { return static_cast<int>(lines.size()); }
  int component_of_chord(int chord) const;
  int position_in_component(int chord) const;
  int next_chord(int chord) const;
  int prev_chord(int chord) const;
  const Vec2<Rational>& segment_start(int chord) const { return vertices[chord]; }
  const Vec2<Rational>& segment_end(int chord) const { return vertices[next_chord(chord)]; }
  Vec2<Rational> direction(int chord) const { return segment_end(chord) - segment_start(chord); }

  bool has_signs() const;
  std::vector<bool> first_over() const;
  PlanarDiagram planar_diagram() const;
};

class CombinatorialCollapse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vertices and crossings by exact intersection. Parallel lines that are not
/// consecutive simply do not cross. Throws CombinatorialCollapse when
/// consecutive lines are parallel or a crossing ties with another point on
/// the same segment.
PerturbedPolygon polygon_from_lines(std::vector<std::vector<int>> components, std::vector<Line> lines);

/// What must survive a perturbation: which chords cross, the partner order
/// along every chord, and the orientation of each crossing.
struct CombinatorialSignature {
  std::vector<std::array<int, 2>> pairs;  // sorted
  std::vector<int> orientation;           // sign of cross(dir lo, dir hi), per pair
  std::vector<std::vector<int>> partners;  // per chord, partner chords in travel order

  friend bool operator==(const CombinatorialSignature&, const CombinatorialSignature&) = default;
};

CombinatorialSignature signature(const StarDiagram& star);
CombinatorialSignature signature(const PerturbedPolygon& polygon);
bool combinatorially_equivalent(const PerturbedPolygon& a, const PerturbedPolygon& b);

/// tan of the global pre-rotation; keeps every chord non-vertical.
inline const Rational kRotationTangent{1, 17};
inline constexpr int kDrawBits = 31;
inline constexpr int kMaxHalvings = 60;

/// Star chords after the pre-rotation, slopes and intercepts rounded to
/// multiples of 2^-31.
std::vector<Line> approximate_star_lines(const StarDiagram& star);

/// Every slope and intercept moves by delta * m / 2^31 with m uniform in
/// [-2^31, 2^31), drawn from mt19937_64(seed). Draws with two parallel
/// lines are rejected. Redraws with delta halved
/// until the combinatorics match the star's. Crossing ids and signs are
/// copied from the star.
PerturbedPolygon perturb(const StarDiagram& star, const Rational& delta, std::uint64_t seed);

/// The rounded star lines with no draw applied.
PerturbedPolygon unperturbed_polygon(const StarDiagram& star);

struct ArcPassage {
  int crossing = 0;
  int chord = 0;
  Real arc;
};

struct ComponentArcs {
  Real length;                     // before normalisation
  std::vector<Real> vertex_arcs;   // start of each chord in traversal order
  std::vector<ArcPassage> passages;  // sorted by arc
};

/// sqrt(1 + a_i^2) (x_ij - x_{i-1,i}) for a point on chord i.
Real signed_length(const PerturbedPolygon& polygon, int chord, const Vec2<Rational>& point);

/// Arc lengths normalised to total length 1 per component, computed at the
/// current Real precision.
std::vector<ComponentArcs> arc_length_table(const PerturbedPolygon& polygon);

std::vector<Real> passage_arcs(const ComponentArcs& arcs);

}  // namespace bk

#endif  // BILLIARD_KNOTS_PERTURBATION_HPP
