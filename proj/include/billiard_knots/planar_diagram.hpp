#ifndef BILLIARD_KNOTS_PLANAR_DIAGRAM_HPP
#define BILLIARD_KNOTS_PLANAR_DIAGRAM_HPP

#include "billiard_knots/numeric.hpp"

#include <vector>

namespace bk {

/// One pass of a closed curve through a crossing, with its direction of
/// travel in the plane.
struct PlanarPassage {
  int crossing = -1;
  Vec2<double> direction = Vec2<double>::Zero();
};

/// Closed plane curves described by the crossings met along each component.
/// Every crossing id in [0, crossing_count) occurs in exactly two passages.
/// The "first" passage of a crossing is the earlier one in component-major
/// traversal order.
struct PlanarDiagram {
  std::vector<std::vector<PlanarPassage>> components;
  int crossing_count = 0;
};

/// Whether the first of two passages must lie above the second for their
/// crossing to have the given sign.
inline bool first_over_for_sign(const Vec2<double>& first, const Vec2<double>& second, int sign) {
  return (cross(first, second) > 0) == (sign > 0);
}

}  // namespace bk

#endif  // BILLIARD_KNOTS_PLANAR_DIAGRAM_HPP
