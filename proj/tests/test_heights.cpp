#include <doctest.h>

#include "billiard_knots/certify.hpp"
#include "fixtures.hpp"

#include <random>

using namespace bk;

namespace {

HeightProblem single_crossing(bool first_over) {
  HeightProblem problem;
  problem.window_arcs = {{Real(0.2), Real(0.7)}};
  problem.vertex_arcs = {{}};
  HeightConstraint h;
  h.first_arc = Real(0.2);
  h.second_arc = Real(0.7);
  h.first_over = first_over;
  problem.constraints.push_back(h);
  return problem;
}

bool phase_in(const std::vector<PhaseInterval>& intervals, double phi, double slack) {
  for (const auto& iv : intervals) {
    for (double shift : {0.0, 1.0})
      if (phi + shift >= iv.lo - slack && phi + shift <= iv.hi + slack) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("sawtooth values") {
  CHECK(evaluate_sawtooth({1, Real(0.5)}, Real(0)) == 0);
  CHECK(evaluate_sawtooth({1, Real(0.75)}, Real(0)) == Real(0.5));
  CHECK(evaluate_sawtooth({1, Real(0)}, Real(0.25)) == Real(0.5));
  CHECK(evaluate_sawtooth({3, Real(0)}, Real(1) / 6) == 0);
  CHECK(sawtooth<double>(2, 0.1, 0.3) == doctest::Approx(2 * std::abs(0.7 - 0.5)));
}

TEST_CASE("anchoring the phase at a start height") {
  for (double z0 : {0.0, 0.25, 0.5, 0.9}) {
    auto h = SawtoothHeight::anchored(4, Real(z0));
    CHECK(h.phase == frac(Real(0.5) + Real(z0) / 2));
    CHECK(mp::abs(h.start_height() - Real(z0)) < Real(1e-30));
  }
}

TEST_CASE("sawtooth stays in [0, 1] with slope 2f") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    int f = 1 + static_cast<int>(rng() % 50);
    double phi = unit(rng), t = unit(rng);
    double z = sawtooth(f, phi, t);
    CHECK(z >= 0);
    CHECK(z <= 1);
    double h = 1e-7;
    double slope = (sawtooth(f, phi, t + h) - z) / h;
    if (std::abs(std::abs(slope) - 2 * f) > 1e-3) {
      // a kink lies within h of t
      double u = f * t + phi;
      double to_kink = std::min(std::abs(u * 2 - std::round(u * 2)), 1.0);
      CHECK(to_kink < 2 * f * h);
    }
  }
}

TEST_CASE("single crossing at arcs 0.2 and 0.7") {
  auto over = single_crossing(true);
  CHECK(heights_satisfy(over, {{1, Real(0)}}, Real(1e-3)));
  CHECK_FALSE(heights_satisfy(over, {{1, Real(0.5)}}, Real(1e-3)));
  auto under = single_crossing(false);
  CHECK(heights_satisfy(under, {{1, Real(0.5)}}, Real(1e-3)));
  CHECK(mp::abs(evaluate_sawtooth({1, Real(0.5)}, Real(2) / 10) - Real(4) / 10) < Real(1e-30));
  CHECK(mp::abs(evaluate_sawtooth({1, Real(0.5)}, Real(7) / 10) - Real(6) / 10) < Real(1e-30));

  for (bool first_over : {true, false}) {
    auto problem = single_crossing(first_over);
    auto solution = search_heights(problem);
    CHECK(solution.heights[0].frequency == 1);
    CHECK(heights_satisfy(problem, solution.heights, Real(1e-3)));
    CHECK(solution.min_slack > 0);
  }
}

TEST_CASE("without constraints every phase is feasible") {
  auto intervals = feasible_phases(3, {}, {}, 1e-3);
  REQUIRE(intervals.size() == 1);
  CHECK(intervals[0].width() == doctest::Approx(1.0));
}

TEST_CASE("feasible phases agree with dense sampling") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int f = 1 + static_cast<int>(rng() % 12);
    const double margin = 0.01;
    std::vector<HeightWindow> windows;
    std::vector<OrderConstraint> orders;
    for (int i = 0; i < 3; ++i) {
      double lo = 0.3 * unit(rng);
      windows.push_back({unit(rng), lo, lo + 0.4 + 0.3 * unit(rng)});
    }
    for (int i = 0; i < 2; ++i) orders.push_back({unit(rng), unit(rng)});
    auto intervals = feasible_phases(f, windows, orders, margin);
    auto feasible = [&](double phi, double slack) {
      for (const auto& w : windows) {
        double z = sawtooth(f, phi, w.arc);
        if (z < w.lo - slack || z > w.hi + slack) return false;
      }
      for (const auto& o : orders)
        if (sawtooth(f, phi, o.over_arc) - sawtooth(f, phi, o.under_arc) < margin - slack) return false;
      return true;
    };
    const int samples = 20000;
    for (int k = 0; k < samples; ++k) {
      double phi = (k + 0.5) / samples;
      if (feasible(phi, -1e-9)) CHECK(phase_in(intervals, phi, 1e-12));
      if (!feasible(phi, 1e-9)) CHECK_FALSE(phase_in(intervals, phi, -1e-9));
    }
    for (const auto& iv : intervals) {
      double mid = 0.5 * (iv.lo + iv.hi);
      CHECK(feasible(mid - std::floor(mid), 1e-12));
    }
  }
}

TEST_CASE("perturbed pentagram, all positive, margin 1e-3") {
  auto built = fixture::build(toric_pattern(2, 5));
  auto solution = search_heights(built.problem);
  REQUIRE(solution.heights.size() == 1);
  CHECK(solution.heights[0].frequency <= 200);
  CHECK(heights_satisfy(built.problem, solution.heights, Real(1e-3)));
  CHECK(count_satisfied(built.problem, solution.heights, 1e-3) == constraint_total(built.problem));
  CHECK(constraint_total(built.problem) == 5 + 10 + 5);
}

TEST_CASE("smallest frequency is returned") {
  auto built = fixture::build(fixture::trefoil());
  auto solution = search_heights(built.problem);
  const int f = solution.heights[0].frequency;
  for (int g = 1; g < f; ++g) {
    SearchOptions options;
    options.f_max = g;
    CHECK_THROWS_AS(search_heights(built.problem, options), SearchExhausted);
  }
}

TEST_CASE("search exhaustion carries a partial result") {
  auto built = fixture::build(fixture::figure_eight());
  SearchOptions options;
  options.f_max = 40;
  try {
    search_heights(built.problem, options);
    FAIL("expected exhaustion");
  } catch (const SearchExhausted& e) {
    CHECK(e.total == 8 + 32 + 16);
    CHECK(e.satisfied < e.total);
    CHECK(e.satisfied > 0);
    CHECK(e.frequencies.size() == 1);
  }
  CHECK_THROWS_AS(search_heights(built.problem, {10, 0.0}), std::invalid_argument);
}

TEST_CASE("emitted trajectory with f = 1") {
  auto built = fixture::build(toric_pattern(2, 5));
  // any phase whose vertex heights avoid 0 and 1
  SawtoothHeight h{1, Real(0.3)};
  auto traj = emit_trajectory(built.polygon, built.arcs, built.problem, {h});
  REQUIRE(traj.components.size() == 1);
  int walls = 0, floors = 0, ceilings = 0;
  for (const auto& p : traj.components[0]) {
    if (p.kind == TrajectoryPoint::Kind::Wall) ++walls;
    if (p.kind == TrajectoryPoint::Kind::Floor) ++floors;
    if (p.kind == TrajectoryPoint::Kind::Ceiling) ++ceilings;
  }
  CHECK(walls == 5);
  CHECK(floors == 1);
  CHECK(ceilings == 1);
}

TEST_CASE("emitted trajectories of solved problems") {
  for (const auto& pattern : {toric_pattern(2, 5), fixture::trefoil(), fixture::hopf(), toric_pattern(3, 7)}) {
    auto built = fixture::build(pattern);
    auto solution = search_heights(built.problem);
    auto traj = emit_trajectory(built.polygon, built.arcs, built.problem, solution.heights);
    auto table = build_table(built.polygon);
    for (std::size_t c = 0; c < traj.components.size(); ++c) {
      int bounces = 0;
      std::size_t wall_index = 0;
      Real previous = -1;
      for (const auto& p : traj.components[c]) {
        CHECK(p.arc > previous);
        previous = p.arc;
        if (p.kind == TrajectoryPoint::Kind::Wall) {
          CHECK(p.position.z() > 0);
          CHECK(p.position.z() < 1);
          // projection recovers the polygon vertex exactly
          CHECK(p.wall_xy == built.polygon.segment_start(built.polygon.components[c][wall_index++]));
        } else {
          ++bounces;
        }
      }
      CHECK(bounces == 2 * solution.heights[c].frequency);
      CHECK(wall_index == built.polygon.components[c].size());
    }
    CHECK(verify_reflection(traj.polylines(), table, Real(1e-9)).passed());
    for (const auto& x : traj.crossings) CHECK((x.first_over ? x.first_z - x.second_z : x.second_z - x.first_z) >= Real(1e-3));
  }
}

TEST_CASE("link heights respect crossings between components") {
  auto built = fixture::build(fixture::hopf());
  auto solution = search_heights(built.problem);
  REQUIRE(solution.heights.size() == 2);
  int between = 0;
  for (const auto& h : built.problem.constraints) between += h.first_component != h.second_component;
  CHECK(between == 6);
  CHECK(heights_satisfy(built.problem, solution.heights, Real(1e-3)));
}

TEST_CASE("parity obstruction for equal arc differences") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Real t1 = Real(unit(rng)) / 2, t2 = t1 + Real(unit(rng)) / 4, t3 = Real(unit(rng)) / 2;
    Real t4 = t3 + (t2 - t1);
    const int f = 1 + static_cast<int>(rng() % 100000);
    const Real phi(unit(rng));
    Real combo = 0;
    const std::array<Real, 4> t = {t1, t2, t3, t4};
    const std::array<int, 4> coeff = {1, -1, -1, 1};
    for (int i = 0; i < 4; ++i) {
      SawtoothHeight h{f, phi};
      Real z = evaluate_sawtooth(h, t[i]);
      Real u = frac(f * t[i] + phi);
      int eps = u > Real(0.5) ? 1 : -1;
      // eps z = 2 (f t + phi) - 1 - 2 floor(f t + phi)
      CHECK(mp::abs(eps * z - (2 * (f * t[i] + phi) - 1 - 2 * to_real(Rational(floor_integer(f * t[i] + phi))))) <
            Real(1e-25));
      combo += coeff[i] * eps * z;
    }
    Real nearest_even = 2 * mp::round(combo / 2);
    CHECK(mp::abs(combo - nearest_even) < Real(1e-9));
  }
}

TEST_CASE("z1 = z2 = z3 = 1 forces z4 = 1") {
  const double t1 = 0.1234567, t2 = 0.3456789, t3 = 0.5012345, t4 = t3 + (t2 - t1);
  const double eta = 0.02;
  std::vector<HeightWindow> three = {{t1, 1 - eta, 1}, {t2, 1 - eta, 1}, {t3, 1 - eta, 1}};
  int solvable = 0;
  for (int f = 1; f <= 3000; ++f) {
    auto with_fourth = three;
    with_fourth.push_back({t4, 0, 1 - 4 * eta});
    CHECK(feasible_phases(f, with_fourth, {}, eta).empty());
    auto intervals = feasible_phases(f, three, {}, eta);
    if (!intervals.empty()) {
      ++solvable;
      for (const auto& iv : intervals) {
        double mid = 0.5 * (iv.lo + iv.hi);
        CHECK(sawtooth(f, mid - std::floor(mid), t4) > 1 - 4 * eta);
      }
    }
  }
  // the obstruction is not vacuous
  CHECK(solvable > 0);
}

TEST_CASE("density: satisfiable patterns grow with the frequency bound") {
  struct Case {
    fixture::Built built;
    int patterns;
  };
  auto run = [](fixture::Built built, const std::vector<std::vector<bool>>& patterns) {
    std::vector<int> needed;
    for (const auto& over : patterns) {
      HeightProblem problem = built.problem;
      for (std::size_t i = 0; i < problem.constraints.size(); ++i) problem.constraints[i].first_over = over[i];
      SearchOptions options;
      options.f_max = 100000;
      needed.push_back(search_heights(problem, options).heights[0].frequency);
    }
    double previous = 0;
    for (int bound : {1, 10, 100, 1000, 10000, 100000}) {
      double fraction =
          static_cast<double>(std::count_if(needed.begin(), needed.end(), [&](int f) { return f <= bound; })) /
          needed.size();
      CHECK(fraction >= previous);
      previous = fraction;
    }
    CHECK(previous == 1.0);
  };
  // every over/under pattern of the perturbed pentagram
  {
    auto built = fixture::build(toric_pattern(2, 5));
    std::vector<std::vector<bool>> all;
    for (int mask = 0; mask < 32; ++mask) {
      std::vector<bool> over;
      for (int i = 0; i < 5; ++i) over.push_back((mask >> i) & 1);
      all.push_back(over);
    }
    run(built, all);
  }
  // sampled patterns on the larger knot diagrams
  std::mt19937_64 rng(8);
  for (const auto& pattern : {toric_pattern(3, 7), fixture::figure_eight()}) {
    auto built = fixture::build(pattern);
    std::vector<std::vector<bool>> sampled;
    for (int k = 0; k < 3; ++k) {
      std::vector<bool> over;
      for (std::size_t i = 0; i < built.problem.constraints.size(); ++i) over.push_back(rng() & 1);
      sampled.push_back(over);
    }
    run(built, sampled);
  }
}
