#include "billiard_knots/heights.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

namespace bk {

Real SawtoothHeight::start_height() const { return sawtooth(frequency, phase, Real(0)); }

SawtoothHeight SawtoothHeight::anchored(int frequency, const Real& z0) {
  return {frequency, frac(Real(0.5) + z0 / 2)};
}

Real evaluate_sawtooth(const SawtoothHeight& height, const Real& t) {
  return sawtooth(height.frequency, height.phase, t);
}

HeightProblem height_problem(const PerturbedPolygon& polygon, const std::vector<ComponentArcs>& arcs) {
  const auto over = polygon.first_over();
  HeightProblem problem;
  problem.constraints.resize(polygon.crossings.size());
  std::vector<int> seen(polygon.crossings.size(), 0);
  for (std::size_t c = 0; c < arcs.size(); ++c) {
    problem.vertex_arcs.push_back(arcs[c].vertex_arcs);
    std::vector<Real> windows = arcs[c].vertex_arcs;
    for (const auto& pass : arcs[c].passages) {
      windows.push_back(pass.arc);
      HeightConstraint& h = problem.constraints[pass.crossing];
      h.crossing = pass.crossing;
      if (seen[pass.crossing]++ == 0) {
        h.first_component = static_cast<int>(c);
        h.first_arc = pass.arc;
        h.first_over = over[pass.crossing];
      } else {
        h.second_component = static_cast<int>(c);
        h.second_arc = pass.arc;
      }
    }
    problem.window_arcs.push_back(std::move(windows));
  }
  return problem;
}

std::vector<PhaseInterval> feasible_phases(int frequency, const std::vector<HeightWindow>& windows,
                                           const std::vector<OrderConstraint>& orders, double margin) {
  const double f = frequency;
  std::vector<double> cuts = {0.0, 1.0};
  auto add_cuts = [&](double t) {
    double b = -f * t;
    b -= std::floor(b);
    b = std::fmod(b, 0.5);
    cuts.push_back(b);
    cuts.push_back(b + 0.5);
  };
  for (const auto& w : windows) add_cuts(w.arc);
  for (const auto& o : orders) {
    add_cuts(o.over_arc);
    add_cuts(o.under_arc);
  }
  std::sort(cuts.begin(), cuts.end());

  std::vector<PhaseInterval> raw;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double a = cuts[j], b = cuts[j + 1];
    if (b - a < 1e-14) continue;
    const double mid = 0.5 * (a + b);
    double lo = a, hi = b;
    auto eval = [&](double t, double& z, double& slope) {
      double u = f * t + mid;
      u -= std::floor(u);
      z = 2 * std::abs(u - 0.5);
      slope = u > 0.5 ? 2.0 : -2.0;
    };
    // slope * (phi - mid) + value >= 0
    auto need = [&](double slope, double value) {
      if (slope > 0) lo = std::max(lo, mid - value / slope);
      else if (slope < 0) hi = std::min(hi, mid - value / slope);
      else if (value < 0) hi = -1;
    };
    for (const auto& w : windows) {
      double z, s;
      eval(w.arc, z, s);
      need(s, z - w.lo);
      need(-s, w.hi - z);
    }
    for (const auto& o : orders) {
      double zo, so, zu, su;
      eval(o.over_arc, zo, so);
      eval(o.under_arc, zu, su);
      need(so - su, zo - zu - margin);
    }
    if (hi > lo) raw.push_back({lo, hi});
  }

  std::vector<PhaseInterval> merged;
  for (const auto& iv : raw) {
    if (!merged.empty() && iv.lo - merged.back().hi <= 1e-12) merged.back().hi = std::max(merged.back().hi, iv.hi);
    else merged.push_back(iv);
  }
  if (merged.size() > 1 && merged.front().lo <= 1e-12 && merged.back().hi >= 1 - 1e-12) {
    merged.back().hi = 1 + merged.front().hi;
    merged.erase(merged.begin());
  }
  return merged;
}

namespace {

struct CrossingData {
  int first_component, second_component;
  double first_arc, second_arc;
  bool first_over;
};

struct DoubleProblem {
  std::vector<std::vector<double>> windows;
  std::vector<CrossingData> crossings;
  std::vector<std::vector<OrderConstraint>> own_orders;  // per component
  std::vector<int> involvement;                           // constraints touching each component
};

DoubleProblem lower(const HeightProblem& problem) {
  DoubleProblem out;
  const int comps = problem.component_count();
  out.own_orders.resize(comps);
  out.involvement.assign(comps, 0);
  for (const auto& arcs : problem.window_arcs) {
    std::vector<double> w;
    for (const auto& t : arcs) w.push_back(to_double(t));
    out.windows.push_back(std::move(w));
  }
  for (int c = 0; c < comps; ++c) out.involvement[c] = static_cast<int>(out.windows[c].size());
  for (const auto& h : problem.constraints) {
    CrossingData x{h.first_component, h.second_component, to_double(h.first_arc), to_double(h.second_arc), h.first_over};
    out.crossings.push_back(x);
    ++out.involvement[x.first_component];
    if (x.second_component != x.first_component) ++out.involvement[x.second_component];
    if (x.first_component == x.second_component) {
      out.own_orders[x.first_component].push_back(
          x.first_over ? OrderConstraint{x.first_arc, x.second_arc} : OrderConstraint{x.second_arc, x.first_arc});
    }
  }
  return out;
}

double z_of(int f, double phase, double t) { return sawtooth<double>(f, phase, t); }

double pick_phase(const std::vector<PhaseInterval>& intervals) {
  const auto widest = std::max_element(intervals.begin(), intervals.end(),
                                       [](const PhaseInterval& a, const PhaseInterval& b) { return a.width() < b.width(); });
  double phase = 0.5 * (widest->lo + widest->hi);
  return phase - std::floor(phase);
}

struct Tracker {
  int best = -1;
  std::vector<int> frequencies;
  std::vector<double> phases;
};

int count_double(const DoubleProblem& p, const std::vector<int>& f, const std::vector<double>& phi, double margin) {
  int count = 0;
  for (std::size_t c = 0; c < p.windows.size(); ++c)
    for (double t : p.windows[c]) {
      double z = z_of(f[c], phi[c], t);
      count += (z >= margin && z <= 1 - margin);
    }
  for (const auto& x : p.crossings) {
    double z1 = z_of(f[x.first_component], phi[x.first_component], x.first_arc);
    double z2 = z_of(f[x.second_component], phi[x.second_component], x.second_arc);
    count += x.first_over ? (z1 - z2 >= margin) : (z2 - z1 >= margin);
  }
  return count;
}

void track(Tracker& tracker, const DoubleProblem& p, const std::vector<int>& f, const std::vector<double>& phi,
           double margin) {
  int n = count_double(p, f, phi, margin);
  if (n > tracker.best) {
    tracker.best = n;
    tracker.frequencies = f;
    tracker.phases = phi;
  }
}

std::vector<HeightWindow> own_windows(const DoubleProblem& p, int c, double margin) {
  std::vector<HeightWindow> out;
  for (double t : p.windows[c]) out.push_back({t, margin, 1 - margin});
  return out;
}

double min_slack(const DoubleProblem& p, const std::vector<int>& f, const std::vector<double>& phi, double margin) {
  double slack = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < p.windows.size(); ++c)
    for (double t : p.windows[c]) {
      double z = z_of(f[c], phi[c], t);
      slack = std::min({slack, z - margin, 1 - margin - z});
    }
  for (const auto& x : p.crossings) {
    double z1 = z_of(f[x.first_component], phi[x.first_component], x.first_arc);
    double z2 = z_of(f[x.second_component], phi[x.second_component], x.second_arc);
    slack = std::min(slack, (x.first_over ? z1 - z2 : z2 - z1) - margin);
  }
  return slack;
}

}  // namespace

int constraint_total(const HeightProblem& problem) {
  int total = static_cast<int>(problem.constraints.size());
  for (const auto& w : problem.window_arcs) total += static_cast<int>(w.size());
  return total;
}

int count_satisfied(const HeightProblem& problem, const std::vector<SawtoothHeight>& heights, double margin) {
  std::vector<int> f;
  std::vector<double> phi;
  for (const auto& h : heights) {
    f.push_back(h.frequency);
    phi.push_back(to_double(h.phase));
  }
  return count_double(lower(problem), f, phi, margin);
}

HeightSolution search_heights(const HeightProblem& problem, const SearchOptions& options) {
  if (!(options.margin > 0) || options.margin >= 0.5) throw std::invalid_argument("margin must lie in (0, 1/2)");
  if (options.f_max < 1) throw std::invalid_argument("f_max must be positive");
  const DoubleProblem p = lower(problem);
  const int comps = static_cast<int>(p.windows.size());
  const double m = options.margin;
  Tracker tracker;
  HeightSolution solution;

  auto finish = [&](const std::vector<int>& f, const std::vector<double>& phi) {
    for (int c = 0; c < comps; ++c) solution.heights.push_back({f[c], Real(phi[c])});
    solution.min_slack = min_slack(p, f, phi, m);
    return solution;
  };

  if (comps == 1) {
    const auto windows = own_windows(p, 0, m);
    for (int f = 1; f <= options.f_max; ++f) {
      ++solution.candidates;
      auto intervals = feasible_phases(f, windows, p.own_orders[0], m);
      if (!intervals.empty()) return finish({f}, {pick_phase(intervals)});
      if (f <= 64) {
        for (int k = 0; k < 16; ++k) track(tracker, p, {f}, {(k + 0.5) / 16}, m);
      }
    }
  } else {
    std::vector<std::vector<HeightWindow>> windows(comps);
    for (int c = 0; c < comps; ++c) windows[c] = own_windows(p, c, m);
    // crossings between two components, indexed by the later one
    std::vector<std::vector<CrossingData>> cross(comps);
    for (const auto& x : p.crossings)
      if (x.first_component != x.second_component)
        cross[std::max(x.first_component, x.second_component)].push_back(x);

    std::vector<int> f(comps, 1);
    std::vector<double> phi(comps, 0.0);
    const int last = comps - 1;

    // phases of component c on the 1/(4 f n) grid inside its own feasible set
    auto candidates = [&](int c) {
      std::vector<double> out;
      auto intervals = feasible_phases(f[c], windows[c], p.own_orders[c], m);
      const double step = 1.0 / (4.0 * f[c] * std::max(1, p.involvement[c]));
      for (const auto& iv : intervals) {
        out.push_back(0.5 * (iv.lo + iv.hi));
        for (double x = std::ceil(iv.lo / step) * step; x <= iv.hi; x += step) out.push_back(x);
      }
      for (double& x : out) x -= std::floor(x);
      std::sort(out.begin(), out.end());
      return out;
    };
    auto compatible = [&](int c) {
      for (const auto& x : cross[c]) {
        double z1 = z_of(f[x.first_component], phi[x.first_component], x.first_arc);
        double z2 = z_of(f[x.second_component], phi[x.second_component], x.second_arc);
        if ((x.first_over ? z1 - z2 : z2 - z1) < m) return false;
      }
      return true;
    };

    std::function<bool(int)> descend = [&](int c) -> bool {
      if (c == last) {
        std::vector<HeightWindow> w = windows[last];
        for (const auto& x : cross[last]) {
          const bool last_is_first = x.first_component == last;
          const int other = last_is_first ? x.second_component : x.first_component;
          const double other_arc = last_is_first ? x.second_arc : x.first_arc;
          const double own_arc = last_is_first ? x.first_arc : x.second_arc;
          const bool own_over = last_is_first == x.first_over;
          const double h = z_of(f[other], phi[other], other_arc);
          w.push_back(own_over ? HeightWindow{own_arc, h + m, 1 - m} : HeightWindow{own_arc, m, h - m});
        }
        ++solution.candidates;
        auto intervals = feasible_phases(f[last], w, p.own_orders[last], m);
        if (!intervals.empty()) {
          phi[last] = pick_phase(intervals);
          return true;
        }
        if (tracker.best < 0 || solution.candidates % 64 == 0) {
          phi[last] = 0.5;
          track(tracker, p, f, phi, m);
        }
        return false;
      }
      for (double x : candidates(c)) {
        phi[c] = x;
        if (compatible(c) && descend(c + 1)) return true;
      }
      return false;
    };

    for (int top = 1; top <= options.f_max; ++top) {
      // tuples in [1, top]^comps with maximum top, lexicographic
      std::fill(f.begin(), f.end(), 1);
      while (true) {
        if (*std::max_element(f.begin(), f.end()) == top && descend(0)) return finish(f, phi);
        int c = comps - 1;
        while (c >= 0 && f[c] == top) f[c--] = 1;
        if (c < 0) break;
        ++f[c];
      }
    }
  }

  if (tracker.best < 0) {
    tracker.frequencies.assign(comps, 1);
    tracker.phases.assign(comps, 0.0);
    tracker.best = count_double(p, tracker.frequencies, tracker.phases, m);
  }
  throw SearchExhausted("no sawtooth heights with f <= " + std::to_string(options.f_max) + " (best assignment meets " +
                            std::to_string(tracker.best) + " of " + std::to_string(constraint_total(problem)) +
                            " conditions)",
                        tracker.best, constraint_total(problem), tracker.frequencies, tracker.phases);
}

bool heights_satisfy(const HeightProblem& problem, const std::vector<SawtoothHeight>& heights, const Real& margin) {
  if (static_cast<int>(heights.size()) != problem.component_count()) return false;
  for (int c = 0; c < problem.component_count(); ++c)
    for (const auto& t : problem.window_arcs[c]) {
      Real z = evaluate_sawtooth(heights[c], t);
      if (z < margin || z > 1 - margin) return false;
    }
  for (const auto& h : problem.constraints) {
    Real z1 = evaluate_sawtooth(heights[h.first_component], h.first_arc);
    Real z2 = evaluate_sawtooth(heights[h.second_component], h.second_arc);
    if ((h.first_over ? z1 - z2 : z2 - z1) < margin) return false;
  }
  return true;
}

std::vector<std::vector<Vec3<Real>>> SpatialTrajectory::polylines() const {
  std::vector<std::vector<Vec3<Real>>> out;
  for (const auto& comp : components) {
    std::vector<Vec3<Real>> pts;
    for (const auto& point : comp) pts.push_back(point.position);
    out.push_back(std::move(pts));
  }
  return out;
}

SpatialTrajectory emit_trajectory(const PerturbedPolygon& polygon, const std::vector<ComponentArcs>& arcs,
                                  const HeightProblem& problem, const std::vector<SawtoothHeight>& heights) {
  if (heights.size() != polygon.components.size() || arcs.size() != polygon.components.size())
    throw std::invalid_argument("one height function per component is required");
  SpatialTrajectory traj;
  traj.heights = heights;
  for (std::size_t c = 0; c < polygon.components.size(); ++c) {
    const auto& chords = polygon.components[c];
    const auto& vertex_arcs = arcs[c].vertex_arcs;
    const auto& h = heights[c];
    std::vector<TrajectoryPoint> points;
    for (std::size_t i = 0; i < chords.size(); ++i) {
      TrajectoryPoint p;
      p.kind = TrajectoryPoint::Kind::Wall;
      p.wall_xy = polygon.segment_start(chords[i]);
      Vec2<Real> xy = to_real(p.wall_xy);
      p.arc = vertex_arcs[i];
      p.position = Vec3<Real>(xy.x(), xy.y(), evaluate_sawtooth(h, p.arc));
      p.chord = chords[i];
      points.push_back(std::move(p));
    }
    // extrema at f t + phase = k / 2
    const Integer first_k = -floor_integer(-2 * h.phase);
    for (int j = 0; j < 2 * h.frequency; ++j) {
      const Integer k = first_k + j;
      TrajectoryPoint p;
      p.arc = (to_real(Rational(k, 2)) - h.phase) / h.frequency;
      std::size_t i = std::upper_bound(vertex_arcs.begin(), vertex_arcs.end(), p.arc) - vertex_arcs.begin() - 1;
      const Real seg_end = i + 1 < vertex_arcs.size() ? vertex_arcs[i + 1] : Real(1);
      const Real s = (p.arc - vertex_arcs[i]) / (seg_end - vertex_arcs[i]);
      const int chord = chords[i];
      Vec2<Real> a = to_real(polygon.segment_start(chord)), b = to_real(polygon.segment_end(chord));
      Vec2<Real> xy = a + (b - a) * s;
      const bool ceiling = mp::integer_modulus(k, 2) == 0;
      p.kind = ceiling ? TrajectoryPoint::Kind::Ceiling : TrajectoryPoint::Kind::Floor;
      p.position = Vec3<Real>(xy.x(), xy.y(), ceiling ? Real(1) : Real(0));
      p.chord = chord;
      points.push_back(std::move(p));
    }
    std::sort(points.begin(), points.end(),
              [](const TrajectoryPoint& u, const TrajectoryPoint& v) { return u.arc < v.arc; });
    traj.components.push_back(std::move(points));
  }
  for (const auto& x : problem.constraints) {
    CrossingHeight ch;
    ch.crossing = x.crossing;
    ch.first_component = x.first_component;
    ch.second_component = x.second_component;
    ch.first_arc = x.first_arc;
    ch.second_arc = x.second_arc;
    ch.first_z = evaluate_sawtooth(heights[x.first_component], x.first_arc);
    ch.second_z = evaluate_sawtooth(heights[x.second_component], x.second_arc);
    ch.first_over = x.first_over;
    traj.crossings.push_back(std::move(ch));
  }
  return traj;
}

}  // namespace bk
