#include <doctest.h>

#include "billiard_knots/billiard.hpp"

#include <random>

using namespace bk;

namespace {

Line through(const Vec2<Rational>& a, const Vec2<Rational>& b) {
  Rational slope = (b.y() - a.y()) / (b.x() - a.x());
  return {slope, a.y() - slope * a.x()};
}

PerturbedPolygon polygon_through(const std::vector<Vec2<Rational>>& points) {
  std::vector<Line> lines;
  std::vector<int> order;
  for (std::size_t c = 0; c < points.size(); ++c) {
    lines.push_back(through(points[c], points[(c + 1) % points.size()]));
    order.push_back(static_cast<int>(c));
  }
  return polygon_from_lines({order}, lines);
}

Vec2<Rational> rat(int x, int y) { return {Rational(x), Rational(y)}; }

bool convex_ccw(const std::vector<Vec2<Real>>& corners) {
  const std::size_t n = corners.size();
  for (std::size_t j = 0; j < n; ++j) {
    Vec2<Real> e0 = corners[(j + 1) % n] - corners[j];
    Vec2<Real> e1 = corners[(j + 2) % n] - corners[(j + 1) % n];
    if (!(cross(e0, e1) > 0)) return false;
  }
  return true;
}

std::vector<std::vector<Vec3<Real>>> lift(const PerturbedPolygon& poly, const Real& z) {
  std::vector<std::vector<Vec3<Real>>> out;
  for (const auto& comp : polygon_vertices(poly)) {
    std::vector<Vec3<Real>> pts;
    for (const auto& p : comp) pts.emplace_back(p.x(), p.y(), z);
    out.push_back(std::move(pts));
  }
  return out;
}

}  // namespace

TEST_CASE("bisector of a right angle") {
  Vec2<Real> u = internal_bisector<Real>(Vec2<Real>(1, 0), Vec2<Real>(0, 0), Vec2<Real>(0, 1));
  Real h = 1 / mp::sqrt(Real(2));
  CHECK(mp::abs(u.x() - h) < Real(1e-35));
  CHECK(mp::abs(u.y() - h) < Real(1e-35));
  CHECK(mp::abs(u.norm() - 1) < Real(1e-30));
  Vec2<double> ud = internal_bisector<double>({1, 0}, {0, 0}, {0, 1});
  CHECK(ud.x() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("collinear vertices are rejected") {
  CHECK_THROWS_AS(internal_bisector<Real>(Vec2<Real>(1, 0), Vec2<Real>(0, 0), Vec2<Real>(1, 0)), DegenerateAngle);
  CHECK_THROWS_AS(internal_bisector<Real>(Vec2<Real>(1, 0), Vec2<Real>(0, 0), Vec2<Real>(-2, 0)), DegenerateAngle);
  CHECK_NOTHROW(internal_bisector<Real>(Vec2<Real>(1, 0), Vec2<Real>(0, 0), Vec2<Real>(1, Real(1e-20))));
}

TEST_CASE("pentagram bisectors point at the centre") {
  auto star = build_star(5, 2);
  for (int k = 0; k < 5; ++k) {
    Vec2<Real> u = internal_bisector(star.vertices[(k + 3) % 5], star.vertices[k], star.vertices[(k + 2) % 5]);
    Vec2<Real> centre = -star.vertices[k];
    Real angle = mp::abs(mp::atan2(cross(u, centre), u.dot(centre)));
    CHECK(angle < Real(1e-10));
  }
}

TEST_CASE("regular stars are mirror rooms") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{5, 2}, {10, 3}, {9, 3}, {7, 3}}) {
    auto star = build_star(p, q);
    std::vector<std::vector<Vec2<Real>>> comps;
    for (const auto& comp : star.components) {
      std::vector<Vec2<Real>> pts;
      for (int chord : comp) pts.push_back(star.vertices[star.chords[chord][0]]);
      comps.push_back(pts);
    }
    auto report = mirror_room_check<Real>(comps, Real(1e-12));
    CHECK(report.passed);
    CHECK(report.margin > Real(0.01));
  }
}

TEST_CASE("pentagram, all 20 scalar products") {
  auto poly = unperturbed_polygon(build_star(5, 2));
  auto report = mirror_room_check(poly);
  CHECK(report.passed);
  auto pts = polygon_vertices(poly)[0];
  Real smallest = 10;
  for (int k = 0; k < 5; ++k) {
    Vec2<Real> u = internal_bisector(pts[(k + 4) % 5], pts[k], pts[(k + 1) % 5]);
    for (int i = 0; i < 5; ++i)
      if (i != k) smallest = std::min(smallest, Real(u.dot(pts[i] - pts[k])));
  }
  CHECK(mp::abs(smallest - report.margin) < Real(1e-30));
}

TEST_CASE("perturbed pentagram is a mirror room") {
  auto poly = perturb(build_star(5, 2), Rational(1, 1000), 42);
  CHECK(mirror_room_check(poly).passed);
}

TEST_CASE("reflex vertex gives a witness") {
  // D lies inside triangle ABC
  std::vector<Vec2<Rational>> points = {rat(0, 0), rat(4, 1), rat(3, 4), rat(2, 2)};
  auto poly = polygon_through(points);
  auto report = mirror_room_check(poly);
  CHECK_FALSE(report.passed);
  // first failing pair in index order, by direct evaluation in double
  int wk = -1, wi = -1;
  for (int k = 0; k < 4 && wk < 0; ++k) {
    Vec2<double> prev = to_double(to_real(points[(k + 3) % 4])), at = to_double(to_real(points[k])),
                 next = to_double(to_real(points[(k + 1) % 4]));
    Vec2<double> u = internal_bisector(prev, at, next);
    for (int i = 0; i < 4; ++i)
      if (i != k && u.dot(to_double(to_real(points[i])) - at) <= 0) {
        wk = k;
        wi = i;
        break;
      }
  }
  CHECK(report.k == wk);
  CHECK(report.i == wi);
  CHECK_THROWS_AS(build_table(poly), std::invalid_argument);
}

TEST_CASE("pentagram table is a regular pentagon touching the tips") {
  auto poly = unperturbed_polygon(build_star(5, 2));
  auto table = build_table(poly);
  REQUIRE(table.corners.size() == 5);
  CHECK(convex_ccw(table.corners));
  Real r0 = table.corners[0].norm();
  for (const auto& c : table.corners) CHECK(mp::abs(c.norm() - r0) < Real(1e-8));
  for (std::size_t k = 0; k < table.mirrors.size(); ++k) {
    Vec2<Real> p = to_real(table.mirrors[k].vertex);
    CHECK(mp::abs(table.floor_depth(p)) < Real(1e-30));
    // the tip lies on the edge supported by its own mirror
    auto e = std::find(table.edge_mirror.begin(), table.edge_mirror.end(), static_cast<int>(k)) - table.edge_mirror.begin();
    Vec2<Real> a = table.corners[e], b = table.corners[(e + 1) % 5];
    CHECK(mp::abs(cross<Real>(b - a, p - a)) < Real(1e-30));
    CHECK((p - a).dot(b - a) > 0);
    CHECK((p - b).dot(a - b) > 0);
  }
  for (const auto& x : poly.crossings) CHECK(table.floor_depth(to_real(x.point)) > 0);
}

TEST_CASE("perturbed pentagram table is an irregular convex pentagon") {
  auto poly = perturb(build_star(5, 2), Rational(1, 1000), 42);
  auto table = build_table(poly);
  REQUIRE(table.corners.size() == 5);
  CHECK(convex_ccw(table.corners));
  Real lo = 10, hi = 0;
  for (const auto& c : table.corners) {
    lo = std::min(lo, Real(c.norm()));
    hi = std::max(hi, Real(c.norm()));
  }
  CHECK(hi - lo > Real(1e-6));
  for (const auto& v : poly.vertices) CHECK(table.floor_depth(to_real(v)) > Real(-1e-30));
}

TEST_CASE("orthic orbit: the table is the original triangle") {
  // feet of the altitudes of A=(0,0), B=(4,0), C=(1,3)
  std::vector<Vec2<Rational>> feet = {rat(2, 2), {Rational(2, 5), Rational(6, 5)}, rat(1, 0)};
  auto poly = polygon_through(feet);
  auto table = build_table(poly);
  REQUIRE(table.corners.size() == 3);
  std::vector<Vec2<Real>> expected = {Vec2<Real>(0, 0), Vec2<Real>(4, 0), Vec2<Real>(1, 3)};
  for (const auto& e : expected) {
    Real best = 10;
    for (const auto& c : table.corners) best = std::min(best, Real((c - e).norm()));
    CHECK(best < Real(1e-30));
  }
}

TEST_CASE("equilateral midpoint orbit: the table is the triangle") {
  // sqrt(3) rounded to 2^-40
  const Rational s3(Integer("1904410002821"), Integer(1) << 40);
  std::vector<Vec2<Rational>> mids = {{Rational(1), Rational(0)}, {Rational(3, 2), s3 / 2}, {Rational(1, 2), s3 / 2}};
  auto table = build_table(polygon_through(mids));
  REQUIRE(table.corners.size() == 3);
  std::vector<Vec2<Real>> expected = {Vec2<Real>(0, 0), Vec2<Real>(2, 0), Vec2<Real>(1, mp::sqrt(Real(3)))};
  for (const auto& e : expected) {
    Real best = 10;
    for (const auto& c : table.corners) best = std::min(best, Real((c - e).norm()));
    CHECK(best < Real(1e-9));
  }
}

TEST_CASE("tables of larger stars") {
  for (auto [p, q, seed] : std::vector<std::tuple<int, int, int>>{{10, 3, 7}, {9, 3, 1}, {10, 2, 4}, {8, 3, 2}}) {
    auto poly = perturb(build_star(p, q), Rational(1, 1000), seed);
    auto table = build_table(poly);
    CHECK(static_cast<int>(table.corners.size()) == p);
    CHECK(convex_ccw(table.corners));
    for (const auto& x : poly.crossings) CHECK(table.floor_depth(to_real(x.point)) > 0);
  }
}

TEST_CASE("mirror rooms survive jitter below a quarter of the margin") {
  auto poly = perturb(build_star(5, 2), Rational(1, 1000), 42);
  auto base = polygon_vertices(poly);
  const Real m = mirror_room_check(poly).margin;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto jittered = base;
    for (auto& comp : jittered)
      for (auto& v : comp) {
        double angle = 2 * M_PI * unit(rng);
        Real r = m / 4 * Real(unit(rng));
        v += Vec2<Real>(r * std::cos(angle), r * std::sin(angle));
      }
    CHECK(mirror_room_check<Real>(jittered, Real(0)).passed);
  }
}

TEST_CASE("horizontal lift of a billiard polygon reflects at every wall") {
  auto poly = perturb(build_star(5, 2), Rational(1, 1000), 42);
  auto table = build_table(poly);
  auto report = verify_reflection(lift(poly, Real(1) / 2), table, Real(1e-9));
  CHECK(report.passed());
  CHECK(report.contacts_checked == 5);
  CHECK(classify_contact(table, Vec3<Real>(0, 0, Real(1) / 2), Real(1e-9)) == ContactKind::Interior);
}

TEST_CASE("vertical bounce between floor and ceiling") {
  auto table = build_table(perturb(build_star(5, 2), Rational(1, 1000), 42));
  std::vector<std::vector<Vec3<Real>>> traj = {{Vec3<Real>(0, 0, 0), Vec3<Real>(0, 0, 1)}};
  CHECK(classify_contact(table, traj[0][0], Real(1e-9)) == ContactKind::Floor);
  CHECK(classify_contact(table, traj[0][1], Real(1e-9)) == ContactKind::Ceiling);
  CHECK(verify_reflection(traj, table, Real(1e-9)).passed());
}

TEST_CASE("a corrupted height is caught") {
  auto poly = perturb(build_star(5, 2), Rational(1, 1000), 42);
  auto table = build_table(poly);
  auto traj = lift(poly, Real(1) / 2);
  traj[0][3].z() = Real(0.6);
  auto report = verify_reflection(traj, table, Real(1e-9));
  REQUIRE_FALSE(report.passed());
  std::set<int> flagged;
  for (const auto& v : report.violations) flagged.insert(v.vertex);
  CHECK(flagged.count(3) == 1);
  CHECK(report.violations.front().message.rfind("reflection law violated at vertex ", 0) == 0);
}

TEST_CASE("points outside the prism are reported") {
  auto poly = perturb(build_star(5, 2), Rational(1, 1000), 42);
  auto table = build_table(poly);
  auto traj = lift(poly, Real(1) / 2);
  traj[0][1].z() = Real(1.5);
  auto report = verify_reflection(traj, table, Real(1e-9));
  REQUIRE_FALSE(report.passed());
  bool outside = false;
  for (const auto& v : report.violations) outside |= v.message == "point outside the prism at vertex 1";
  CHECK(outside);
}
