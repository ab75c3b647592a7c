#ifndef BILLIARD_KNOTS_CERTIFY_HPP
#define BILLIARD_KNOTS_CERTIFY_HPP

#include "billiard_knots/braid.hpp"
#include "billiard_knots/heights.hpp"
#include "billiard_knots/invariants.hpp"

#include <string>

namespace bk {

/// Diagram of a 3D trajectory seen from above: the wall-to-wall segments
/// are intersected in the plane, heights at a crossing come from linear
/// interpolation along the polyline, and the higher strand is over.
PDCode trajectory_pd(const SpatialTrajectory& trajectory);
PDCode trajectory_pd(const std::vector<std::vector<Vec3<Real>>>& polylines, const std::vector<std::vector<bool>>& is_wall);

struct Certificate {
  bool passed = false;
  LaurentPolynomial constructed;  // Jones of the trajectory, state sum
  LaurentPolynomial intended;     // Jones of the braid closure, skein recursion
  int constructed_components = 0;
  int intended_components = 0;
  int crossings = 0;
};

Certificate certify(const PDCode& constructed, const QuasitoricPattern& pattern);
Certificate certify(const SpatialTrajectory& trajectory, const QuasitoricPattern& pattern);

}  // namespace bk

#endif  // BILLIARD_KNOTS_CERTIFY_HPP
