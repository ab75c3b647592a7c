#ifndef BILLIARD_KNOTS_BILLIARD_HPP
#define BILLIARD_KNOTS_BILLIARD_HPP

#include "billiard_knots/numeric.hpp"
#include "billiard_knots/perturbation.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bk {

class DegenerateAngle : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnboundedTable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unit vector along the internal bisector of the angle prev-at-next.
template <typename Scalar>
Vec2<Scalar> internal_bisector(const Vec2<Scalar>& prev, const Vec2<Scalar>& at, const Vec2<Scalar>& next) {
  Vec2<Scalar> a = prev - at;
  Vec2<Scalar> b = next - at;
  if (cross(a, b) == Scalar(0)) throw DegenerateAngle("collinear vertices have no internal bisector");
  return (a.normalized() + b.normalized()).normalized();
}

/// Mirror at a trajectory vertex: the line through the vertex orthogonal to
/// the bisector, with the bisector as inward normal.
struct Mirror {
  Vec2<Rational> vertex;
  Vec2<Real> normal;
  int chord = 0;  // the vertex is the start of this chord
};

template <typename Scalar>
struct MirrorRoomReport {
  bool passed = false;
  Scalar margin;  // min over k, i != k of u_k . (P_i - P_k)
  // first failing pair in index order; the minimising pair when passing
  int k = -1;
  int i = -1;
};

/// Closed polylines, one point list per component. Passes iff every
/// u_k . (P_i - P_k) exceeds `required` over all vertices of all components.
template <typename Scalar>
MirrorRoomReport<Scalar> mirror_room_check(const std::vector<std::vector<Vec2<Scalar>>>& components,
                                           const Scalar& required) {
  std::vector<Vec2<Scalar>> all;
  std::vector<Vec2<Scalar>> normals;
  for (const auto& comp : components) {
    if (comp.size() < 3) throw std::invalid_argument("mirror room needs closed polygons with at least 3 vertices");
    const std::size_t m = comp.size();
    for (std::size_t k = 0; k < m; ++k) {
      all.push_back(comp[k]);
      normals.push_back(internal_bisector(comp[(k + m - 1) % m], comp[k], comp[(k + 1) % m]));
    }
  }
  MirrorRoomReport<Scalar> report;
  int min_k = -1, min_i = -1;
  for (std::size_t k = 0; k < all.size(); ++k)
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (i == k) continue;
      Scalar v = normals[k].dot(all[i] - all[k]);
      if (min_k < 0 || v < report.margin) {
        report.margin = v;
        min_k = static_cast<int>(k);
        min_i = static_cast<int>(i);
      }
      if (report.k < 0 && !(v > required)) {
        report.k = static_cast<int>(k);
        report.i = static_cast<int>(i);
      }
    }
  if (report.k < 0) {
    report.k = min_k;
    report.i = min_i;
  }
  report.passed = report.margin > required;
  return report;
}

std::vector<Vec2<Real>> real_vertices(const std::vector<Vec2<Rational>>& points);
/// Polygon vertices of every component in traversal order.
std::vector<std::vector<Vec2<Real>>> polygon_vertices(const PerturbedPolygon& polygon);
Real polygon_diameter(const PerturbedPolygon& polygon);

/// Default strict margin: 1e-12 times the polygon diameter.
Real default_mirror_margin(const PerturbedPolygon& polygon);
MirrorRoomReport<Real> mirror_room_check(const PerturbedPolygon& polygon);
MirrorRoomReport<Real> mirror_room_check(const PerturbedPolygon& polygon, const Real& required);

std::vector<Mirror> mirrors(const PerturbedPolygon& polygon);

/// Floor polygon D (counterclockwise corners) times [0, height].
struct BilliardTable {
  std::vector<Mirror> mirrors;
  std::vector<Vec2<Real>> corners;
  std::vector<int> edge_mirror;  // edge e runs corners[e] -> corners[e+1] along mirror edge_mirror[e]
  Real height{1};

  /// Signed distance inside the floor polygon, negative outside.
  Real floor_depth(const Vec2<Real>& point) const;
  bool contains(const Vec3<Real>& point, const Real& tol) const;
};

/// Intersection of the mirror half-planes. Throws UnboundedTable when the
/// intersection is unbounded or a mirror does not support an edge through
/// its vertex.
BilliardTable build_table(const PerturbedPolygon& polygon);

enum class ContactKind { Wall, Floor, Ceiling, Interior, Edge };

struct ReflectionViolation {
  int component = 0;
  int vertex = 0;
  std::string message;
};

struct ReflectionReport {
  bool passed() const { return violations.empty(); }
  std::vector<ReflectionViolation> violations;
  int contacts_checked = 0;
};

ContactKind classify_contact(const BilliardTable& table, const Vec3<Real>& point, const Real& tol);

/// Checks the reflection law at every point of every closed polyline and
/// that all points lie in the prism.
ReflectionReport verify_reflection(const std::vector<std::vector<Vec3<Real>>>& trajectory, const BilliardTable& table,
                                   const Real& tol);

}  // namespace bk

#endif  // BILLIARD_KNOTS_BILLIARD_HPP
