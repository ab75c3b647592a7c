#ifndef BILLIARD_KNOTS_HEIGHTS_HPP
#define BILLIARD_KNOTS_HEIGHTS_HPP

#include "billiard_knots/numeric.hpp"
#include "billiard_knots/perturbation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bk {

/// z(t) = 2 |frac(f t + phase) - 1/2|
struct SawtoothHeight {
  int frequency = 1;
  Real phase;

  /// z(0); the phase 1/2 + z0/2 reproduces it.
  Real start_height() const;
  static SawtoothHeight anchored(int frequency, const Real& z0);
};

template <typename Scalar>
Scalar sawtooth(int frequency, const Scalar& phase, const Scalar& t) {
  using std::floor;
  using std::abs;
  Scalar u = Scalar(frequency) * t + phase;
  u -= floor(u);
  return 2 * abs(u - Scalar(0.5));
}

Real evaluate_sawtooth(const SawtoothHeight& height, const Real& t);

/// Passage heights at one crossing must differ by at least the margin, the
/// over-strand on top.
struct HeightConstraint {
  int crossing = 0;
  int first_component = 0;
  int second_component = 0;
  Real first_arc;
  Real second_arc;
  bool first_over = true;
};

/// Per component, every arc whose height must stay inside [margin, 1 - margin]
/// (wall vertices and crossing passages), plus the crossing constraints.
struct HeightProblem {
  std::vector<std::vector<Real>> window_arcs;
  std::vector<std::vector<Real>> vertex_arcs;
  std::vector<HeightConstraint> constraints;

  int component_count() const { return static_cast<int>(window_arcs.size()); }
};

/// Requires crossing signs on the polygon.
HeightProblem height_problem(const PerturbedPolygon& polygon, const std::vector<ComponentArcs>& arcs);

// Sweep primitives on a single component, in double precision.
struct HeightWindow {
  double arc = 0;
  double lo = 0;
  double hi = 1;
};

struct OrderConstraint {
  double over_arc = 0;
  double under_arc = 0;
};

struct PhaseInterval {
  double lo = 0;
  double hi = 0;
  double width() const { return hi - lo; }
};

/// All phases in [0, 1) meeting every window and every order constraint with
/// the given margin, as disjoint closed intervals. An interval wrapping past
/// 1 is reported with hi > 1.
std::vector<PhaseInterval> feasible_phases(int frequency, const std::vector<HeightWindow>& windows,
                                           const std::vector<OrderConstraint>& orders, double margin);

struct SearchOptions {
  int f_max = 100000;
  double margin = 1e-3;
};

struct HeightSolution {
  std::vector<SawtoothHeight> heights;
  double min_slack = 0;  // smallest constraint slack beyond the margin
  long long candidates = 0;
};

class SearchExhausted : public std::runtime_error {
 public:
  SearchExhausted(const std::string& what, int satisfied, int total, std::vector<int> frequencies,
                  std::vector<double> phases)
      : std::runtime_error(what),
        satisfied(satisfied),
        total(total),
        frequencies(std::move(frequencies)),
        phases(std::move(phases)) {}

  // best partial assignment seen
  int satisfied;
  int total;
  std::vector<int> frequencies;
  std::vector<double> phases;
};

/// Frequency tuples in order of their maximum, then lexicographically. For a
/// single component every phase is swept exactly; for links the earlier
/// components try phases on a grid of spacing 1/(4 f n) inside their own
/// feasible set, and the last component is swept exactly.
HeightSolution search_heights(const HeightProblem& problem, const SearchOptions& options = {});

/// Number of constraints and windows met with the given margin.
int count_satisfied(const HeightProblem& problem, const std::vector<SawtoothHeight>& heights, double margin);
int constraint_total(const HeightProblem& problem);

struct TrajectoryPoint {
  enum class Kind { Wall, Floor, Ceiling };
  Kind kind = Kind::Wall;
  Vec3<Real> position;
  Vec2<Rational> wall_xy;  // exact position, walls only
  Real arc;
  int chord = 0;  // chord starting at a wall point, or carrying a bounce
};

struct CrossingHeight {
  int crossing = 0;
  int first_component = 0;
  int second_component = 0;
  Real first_arc;
  Real second_arc;
  Real first_z;
  Real second_z;
  bool first_over = true;
};

struct SpatialTrajectory {
  std::vector<std::vector<TrajectoryPoint>> components;
  std::vector<SawtoothHeight> heights;
  std::vector<CrossingHeight> crossings;

  std::vector<std::vector<Vec3<Real>>> polylines() const;
};

/// Wall vertices at their sawtooth heights with a floor or ceiling point
/// inserted at every extremum of the sawtooth, 2f per component.
SpatialTrajectory emit_trajectory(const PerturbedPolygon& polygon, const std::vector<ComponentArcs>& arcs,
                                  const HeightProblem& problem, const std::vector<SawtoothHeight>& heights);

/// Recheck of a solution at Real precision; true when every window and
/// constraint holds with the margin.
bool heights_satisfy(const HeightProblem& problem, const std::vector<SawtoothHeight>& heights, const Real& margin);

}  // namespace bk

#endif  // BILLIARD_KNOTS_HEIGHTS_HPP
