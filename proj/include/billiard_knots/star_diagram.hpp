#ifndef BILLIARD_KNOTS_STAR_DIAGRAM_HPP
#define BILLIARD_KNOTS_STAR_DIAGRAM_HPP

#include "billiard_knots/braid.hpp"
#include "billiard_knots/numeric.hpp"
#include "billiard_knots/planar_diagram.hpp"

#include <array>
#include <vector>

namespace bk {

struct StarPassage {
  int component = 0;
  int chord = 0;
  int crossing = 0;
  Real arc;  // in [0, 1), normalised per component
};

struct StarCrossing {
  int id = 0;
  int chord_a = 0;  // chord_b = chord_a + gap (mod p)
  int chord_b = 0;
  int gap = 0;      // 1..q-1; also the braid generator index
  int sector = 0;   // angular interval [sector, sector + 1) in units of 2*pi/p
  int depth = 0;    // radial rank inside the sector, 1 = outermost
  Vec2<Real> point;
  int braid_row = 0;
  int braid_col = 0;
  int first_component = 0;
  int second_component = 0;
  Real first_passage_arc;
  Real second_passage_arc;
  int sign = 0;  // 0 until braid letters are assigned
};

/// The polygonal star {p/q}: vertices e(k) = exp(2*pi*i*k/p) and chords
/// (k, k+q). Components are traversed chord by chord, v -> v+q -> v+2q ...
struct StarDiagram {
  int p = 0;
  int q = 0;
  std::vector<Vec2<Real>> vertices;
  std::vector<std::array<int, 2>> chords;
  std::vector<std::vector<int>> components;
  std::vector<StarCrossing> crossings;
  Real chord_length;

  int component_of_chord(int chord) const;
  int position_in_component(int chord) const;
  bool has_signs() const;
  Vec2<Real> chord_direction(int chord) const;

  /// Requires signs; first_over()[c] is true when the first passage of
  /// crossing c is the over-strand.
  std::vector<bool> first_over() const;
  PlanarDiagram planar_diagram() const;
};

/// Cyclic-gap rule: chords c and c' cross iff (c' - c) mod p lies in
/// [1, q-1] or [p-q+1, p-1].
bool chords_cross(int p, int q, int chord, int other);

/// Throws std::domain_error unless q >= 2 and p >= 2q + 1.
StarDiagram build_star(int p, int q);

/// Per component, the passages through crossings sorted by arc length.
std::vector<std::vector<StarPassage>> trajectory_arc_lengths(const StarDiagram& star);

/// Attaches the sign of the matching braid letter to every crossing. The
/// crossing with gap g in sector s realises generator g of row
/// (s - shift(g)) mod p, where shift(g) counts the j < g with j + q odd;
/// this reproduces the letter order of (sigma_1 ... sigma_{q-1})^p around
/// the closed braid.
StarDiagram assign_braid_letters(StarDiagram star, const QuasitoricPattern& pattern);

int braid_row_shift(int q, int gap);

}  // namespace bk

#endif  // BILLIARD_KNOTS_STAR_DIAGRAM_HPP
