#pragma once

#include "billiard_knots/billiard.hpp"
#include "billiard_knots/heights.hpp"

#include <cstdint>
#include <initializer_list>

namespace fixture {

inline bk::SignMatrix signs(int rows, int cols, std::initializer_list<int> values) {
  bk::SignMatrix s(rows, cols);
  int i = 0;
  for (int v : values) s.data()[i++] = v;
  return s;
}

inline bk::QuasitoricPattern trefoil() { return bk::QuasitoricPattern(2, 5, signs(5, 1, {1, 1, 1, 1, -1})); }
inline bk::QuasitoricPattern figure_eight() {
  return bk::pad_to_min_repetitions(bk::QuasitoricPattern(3, 2, signs(2, 2, {1, -1, 1, -1})));
}
inline bk::QuasitoricPattern hopf() {
  return bk::pad_to_min_repetitions(bk::QuasitoricPattern(2, 2, signs(2, 1, {1, 1})));
}

struct Built {
  bk::QuasitoricPattern pattern;
  bk::StarDiagram star;
  bk::PerturbedPolygon polygon;
  std::vector<bk::ComponentArcs> arcs;
  bk::HeightProblem problem;
};

inline Built build(const bk::QuasitoricPattern& pattern, std::uint64_t seed = 42) {
  auto star = bk::assign_braid_letters(bk::build_star(pattern.repetitions(), pattern.strands()), pattern);
  auto polygon = bk::perturb(star, bk::Rational(1, 1000), seed);
  auto arcs = bk::arc_length_table(polygon);
  auto problem = bk::height_problem(polygon, arcs);
  return {pattern, std::move(star), std::move(polygon), std::move(arcs), std::move(problem)};
}

}  // namespace fixture
