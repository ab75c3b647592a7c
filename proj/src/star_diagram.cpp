#include "billiard_knots/star_diagram.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bk {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

Vec2<Real> line_intersection(const Vec2<Real>& a0, const Vec2<Real>& a1, const Vec2<Real>& b0,
                             const Vec2<Real>& b1) {
  Vec2<Real> da = a1 - a0;
  Vec2<Real> db = b1 - b0;
  Real t = cross<Real>(b0 - a0, db) / cross(da, db);
  return a0 + da * t;
}

}  // namespace

bool chords_cross(int p, int q, int chord, int other) {
  int gap = mod(other - chord, p);
  return (gap >= 1 && gap <= q - 1) || (gap >= p - q + 1 && gap <= p - 1);
}

int braid_row_shift(int q, int gap) {
  int shift = 0;
  for (int j = 1; j < gap; ++j) shift += (j + q) % 2;
  return shift;
}

int StarDiagram::component_of_chord(int chord) const { return chord % std::gcd(p, q); }

int StarDiagram::position_in_component(int chord) const {
  const auto& comp = components[component_of_chord(chord)];
  return static_cast<int>(std::find(comp.begin(), comp.end(), chord) - comp.begin());
}

bool StarDiagram::has_signs() const {
  return !crossings.empty() &&
         std::all_of(crossings.begin(), crossings.end(), [](const StarCrossing& x) { return x.sign != 0; });
}

Vec2<Real> StarDiagram::chord_direction(int chord) const {
  return vertices[chords[chord][1]] - vertices[chords[chord][0]];
}

std::vector<bool> StarDiagram::first_over() const {
  if (!has_signs()) throw std::logic_error("star diagram has no crossing signs");
  auto passages = trajectory_arc_lengths(*this);
  // chord of the first and second passage of every crossing
  std::vector<int> first_chord(crossings.size(), -1), second_chord(crossings.size(), -1);
  for (const auto& comp : passages)
    for (const auto& pass : comp) (first_chord[pass.crossing] < 0 ? first_chord : second_chord)[pass.crossing] = pass.chord;
  std::vector<bool> out;
  for (const auto& x : crossings) {
    out.push_back(first_over_for_sign(to_double(chord_direction(first_chord[x.id])),
                                      to_double(chord_direction(second_chord[x.id])), x.sign));
  }
  return out;
}

PlanarDiagram StarDiagram::planar_diagram() const {
  PlanarDiagram out;
  out.crossing_count = static_cast<int>(crossings.size());
  for (const auto& comp : trajectory_arc_lengths(*this)) {
    std::vector<PlanarPassage> passes;
    for (const auto& pass : comp) passes.push_back({pass.crossing, to_double(chord_direction(pass.chord))});
    out.components.push_back(std::move(passes));
  }
  return out;
}

StarDiagram build_star(int p, int q) {
  if (q < 2) throw std::domain_error("star needs q ≥ 2");
  if (p < 2 * q + 1) {
    throw std::domain_error("star {" + std::to_string(p) + "/" + std::to_string(q) + "} needs p ≥ 2q+1");
  }
  StarDiagram star;
  star.p = p;
  star.q = q;
  const Real pi = pi_real();
  for (int k = 0; k < p; ++k) {
    Real angle = 2 * pi * k / p;
    star.vertices.emplace_back(mp::cos(angle), mp::sin(angle));
  }
  for (int c = 0; c < p; ++c) star.chords.push_back({c, (c + q) % p});
  star.chord_length = 2 * mp::sin(pi * q / p);

  const int g = std::gcd(p, q);
  star.components.resize(g);
  for (int v = 0; v < g; ++v)
    for (int c = v, step = 0; step < p / g; ++step, c = (c + q) % p) star.components[v].push_back(c);

  for (int c = 0; c < p; ++c)
    for (int gap = 1; gap <= q - 1; ++gap) {
      StarCrossing x;
      x.id = static_cast<int>(star.crossings.size());
      x.chord_a = c;
      x.chord_b = (c + gap) % p;
      x.gap = gap;
      // The crossing sits on the symmetry axis at angle (2c + gap + q) / 2.
      x.sector = mod((2 * c + gap + q) / 2, p);
      x.depth = q - gap;
      x.point = line_intersection(star.vertices[c], star.vertices[(c + q) % p], star.vertices[x.chord_b],
                                  star.vertices[(x.chord_b + q) % p]);
      x.braid_col = gap - 1;
      x.braid_row = mod(x.sector - braid_row_shift(q, gap), p);
      star.crossings.push_back(std::move(x));
    }

  auto passages = trajectory_arc_lengths(star);
  std::vector<int> seen(star.crossings.size(), 0);
  for (const auto& comp : passages)
    for (const auto& pass : comp) {
      StarCrossing& x = star.crossings[pass.crossing];
      if (seen[pass.crossing]++ == 0) {
        x.first_component = pass.component;
        x.first_passage_arc = pass.arc;
      } else {
        x.second_component = pass.component;
        x.second_passage_arc = pass.arc;
      }
    }
  return star;
}

std::vector<std::vector<StarPassage>> trajectory_arc_lengths(const StarDiagram& star) {
  std::vector<std::vector<StarPassage>> out(star.components.size());
  for (const auto& x : star.crossings) {
    for (int chord : {x.chord_a, x.chord_b}) {
      const int comp = star.component_of_chord(chord);
      const int chords_in_comp = static_cast<int>(star.components[comp].size());
      Vec2<Real> start = star.vertices[star.chords[chord][0]];
      Real along = (x.point - start).dot(star.chord_direction(chord)) / star.chord_length;
      StarPassage pass;
      pass.component = comp;
      pass.chord = chord;
      pass.crossing = x.id;
      pass.arc = (star.position_in_component(chord) * star.chord_length + along) / (chords_in_comp * star.chord_length);
      out[comp].push_back(std::move(pass));
    }
  }
  for (auto& comp : out)
    std::sort(comp.begin(), comp.end(), [](const StarPassage& a, const StarPassage& b) { return a.arc < b.arc; });
  return out;
}

StarDiagram assign_braid_letters(StarDiagram star, const QuasitoricPattern& pattern) {
  if (pattern.repetitions() != star.p || pattern.strands() != star.q) {
    throw std::invalid_argument("pattern (" + std::to_string(pattern.strands()) + "," +
                                std::to_string(pattern.repetitions()) + ") does not match star {" +
                                std::to_string(star.p) + "/" + std::to_string(star.q) + "}");
  }
  for (auto& x : star.crossings) x.sign = pattern.sign(x.braid_row, x.braid_col);
  return star;
}

}  // namespace bk
