#include "tspcn/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace tspcn {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string bool_json(bool b) { return b ? "true" : "false"; }

}  // namespace

SolveReport solve_two_phase(const Instance& instance, const SolverConfig& config) {
  config.validate();
  validate_instance(instance);

  SolveReport report;
  report.config = config;

  auto t0 = Clock::now();
  const NodeGraph graph(instance, config.k);
  switch (config.method) {
    case Method::ExactDp:
      report.phase1 = solve_exact_dp(graph, config.exact_limit);
      report.proven_optimal_discrete = true;
      break;
    case Method::CuttingPlane: {
      CuttingPlaneResult cp = solve_cutting_plane(graph, config.time_limit);
      report.phase1 = std::move(cp.tour);
      report.proven_optimal_discrete = cp.proven_optimal;
      report.time_limited = !cp.proven_optimal;
      report.cuts = cp.cuts;
      break;
    }
    case Method::Heuristic:
      report.phase1 = solve_heuristic(graph, config.seed);
      break;
  }
  report.timings.phase1_seconds = seconds_since(t0);

  t0 = Clock::now();
  const Sequence seq = extract_sequence(report.phase1);
  std::vector<Point> start(instance.circles.size());
  for (std::size_t i = 0; i < start.size(); ++i) {
    start[i] = node_point(instance.circles[i], seq.slots[i], config.k);
  }
  const RefineOptions options{config.descent_tol, config.descent_max_sweeps};
  // Full-disk runs continue from the sector-box result so they never end worse.
  report.solution = sequence_refine(instance, seq.order, start,
                                    build_regions(instance, seq.slots, config.k, SectorMode::SectorBox),
                                    options);
  if (config.sector_mode == SectorMode::FullDisk) {
    report.solution = sequence_refine(instance, seq.order, report.solution.points,
                                      build_regions(instance, seq.slots, config.k, SectorMode::FullDisk),
                                      options);
  }
  report.timings.phase2_seconds = seconds_since(t0);

  t0 = Clock::now();
  const LowerBound bound = lower_bound(instance, config.exact_limit);
  report.lower_bound = bound.value;
  report.lower_bound_available = bound.available;
  report.timings.lower_bound_seconds = seconds_since(t0);
  return report;
}

Sequence extract_sequence(const DiscreteTour& tour) {
  Sequence seq;
  seq.order = tour.order;
  seq.slots = tour.slots;
  const std::size_t n = tour.order.size();
  seq.successor.assign(n, -1);
  for (std::size_t t = 0; t < n; ++t) {
    seq.successor[static_cast<std::size_t>(tour.order[t])] = tour.order[(t + 1) % n];
  }
  return seq;
}

const ConstraintCheck* ValidationReport::find(const std::string& family) const {
  for (const auto& c : checks) {
    if (c.family == family) return &c;
  }
  return nullptr;
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.label << "  max residual "
        << format_number(c.max_residual) << "\n";
    for (const auto& v : c.violations) out << "    " << v << "\n";
  }
  out << "recomputed total " << format_number(recomputed_total) << "\n";
  out << (passed ? "overall: PASS" : "overall: FAIL") << "\n";
  return out.str();
}

ValidationReport validate_solution(const Instance& instance, const ContinuousSolution& s,
                                   double tol) {
  ValidationReport report;
  const std::size_t n = instance.circles.size();
  auto finish = [&report](ConstraintCheck check) {
    check.passed = check.violations.empty();
    report.passed = report.passed && check.passed;
    report.checks.push_back(std::move(check));
  };

  ConstraintCheck shape{"shape", "shape: one point per circle and one edge per tour step", true, 0, {}};
  if (s.points.size() != n) {
    shape.violations.push_back("expected " + std::to_string(n) + " points, got " +
                               std::to_string(s.points.size()));
  }
  if (s.edge_lengths.size() != s.order.size()) {
    shape.violations.push_back("expected " + std::to_string(s.order.size()) +
                               " edge lengths, got " + std::to_string(s.edge_lengths.size()));
  }
  finish(shape);

  ConstraintCheck assign{"assignment", "assignment: every circle entered and left exactly once", true, 0, {}};
  std::vector<int> visits(n, 0);
  for (int c : s.order) {
    if (c < 0 || static_cast<std::size_t>(c) >= n) {
      assign.violations.push_back("order names unknown circle " + std::to_string(c));
      continue;
    }
    ++visits[static_cast<std::size_t>(c)];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (visits[i] != 1) {
      assign.violations.push_back("circle " + std::to_string(i) + " visited " +
                                  std::to_string(visits[i]) + " times");
      assign.max_residual = std::max(assign.max_residual, std::abs(visits[i] - 1.0));
    }
  }
  const bool permutation = assign.violations.empty() && s.order.size() == n;
  finish(assign);

  // seq_i = tour position relative to circle 0 satisfies the MTZ inequalities
  // iff the order is one Hamiltonian cycle.
  ConstraintCheck mtz{"subtour", "subtour: sequence numbers exist, so the order is one cycle", true, 0, {}};
  if (!permutation) {
    mtz.violations.push_back("order is not a permutation; no sequence assignment exists");
  } else {
    std::vector<long> seq(n, 0);
    std::size_t anchor = 0;
    while (s.order[anchor] != 0) ++anchor;
    for (std::size_t t = 0; t < n; ++t) {
      seq[static_cast<std::size_t>(s.order[(anchor + t) % n])] = static_cast<long>(t) + 1;
    }
    const long big_n = static_cast<long>(n);
    for (std::size_t t = 0; t < n; ++t) {
      const int i = s.order[t];
      const int j = s.order[(t + 1) % n];
      if (i == 0 || j == 0) continue;
      const long lhs = seq[static_cast<std::size_t>(i)] - seq[static_cast<std::size_t>(j)] + big_n;
      if (lhs > big_n - 1) {
        mtz.violations.push_back("arc " + std::to_string(i) + "->" + std::to_string(j) +
                                 " violates the sequence inequality");
        mtz.max_residual = std::max(mtz.max_residual, static_cast<double>(lhs - (big_n - 1)));
      }
    }
  }
  finish(mtz);

  ConstraintCheck disk{"disk", "disk: selected point inside its circle", true, 0, {}};
  for (std::size_t i = 0; i < std::min(n, s.points.size()); ++i) {
    const Circle& c = instance.circles[i];
    const Point& p = s.points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      disk.violations.push_back("circle " + std::to_string(i) + ": non-finite point");
      continue;
    }
    const double residual = distance(p, c.center()) - c.radius;
    if (residual > 0) disk.max_residual = std::max(disk.max_residual, residual);
    if (residual > tol) {
      disk.violations.push_back("circle " + std::to_string(i) + ": outside by " +
                                format_number(residual));
    }
  }
  finish(disk);

  ConstraintCheck dist{"distance", "distance: edge length equals distance of selected points", true, 0, {}};
  double recomputed = 0;
  if (s.points.size() == n && s.edge_lengths.size() == s.order.size()) {
    const std::size_t m = s.order.size();
    for (std::size_t t = 0; t < m; ++t) {
      const int a = s.order[t];
      const int b = s.order[(t + 1) % m];
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) continue;
      const double d = distance(s.points[static_cast<std::size_t>(a)], s.points[static_cast<std::size_t>(b)]);
      recomputed += d;
      const double residual = std::abs(s.edge_lengths[t] - d);
      dist.max_residual = std::max(dist.max_residual, residual);
      if (residual > tol) {
        dist.violations.push_back("edge " + std::to_string(a) + "->" + std::to_string(b) +
                                  ": stated " + format_number(s.edge_lengths[t]) + ", actual " +
                                  format_number(d));
      }
    }
  } else {
    dist.violations.push_back("cannot evaluate edges: shape mismatch");
  }
  finish(dist);
  report.recomputed_total = recomputed;

  ConstraintCheck total{"total", "total: stated total equals sum of edge lengths", true, 0, {}};
  double edge_sum = 0;
  for (double e : s.edge_lengths) edge_sum += e;
  const double residual = std::abs(s.total - edge_sum);
  total.max_residual = residual;
  if (!(residual <= tol * std::max(1.0, std::abs(s.total)))) {
    total.violations.push_back("stated " + format_number(s.total) + ", edges sum to " +
                               format_number(edge_sum));
  }
  finish(total);
  return report;
}

LowerBound lower_bound(const Instance& instance, int exact_limit) {
  if (static_cast<int>(instance.circles.size()) > exact_limit) return {0, false};
  double radii = 0;
  for (const Circle& c : instance.circles) radii += c.radius;
  return {std::max(0.0, centers_tour_length(instance, exact_limit) - 2 * radii), true};
}

std::string report_to_json(const SolveReport& report) {
  return report_to_json(report, true);
}

std::string report_to_json(const SolveReport& report, bool include_timings) {
  const SolutionMeta meta{to_string(report.config.method), report.config.k,
                          to_string(report.config.sector_mode)};
  std::vector<JsonMember> extra{
      {"phase1_length", format_number(report.phase1.length)},
      {"phase1_slots", [&] {
         std::string out = "[";
         for (std::size_t i = 0; i < report.phase1.slots.size(); ++i) {
           out += (i ? ", " : "") + std::to_string(report.phase1.slots[i]);
         }
         return out + "]";
       }()},
      {"lower_bound", format_number(report.lower_bound)},
      {"lower_bound_available", bool_json(report.lower_bound_available)},
      {"proven_optimal_discrete", bool_json(report.proven_optimal_discrete)},
      {"time_limited", bool_json(report.time_limited)},
      {"seed", std::to_string(report.config.seed)},
  };
  if (include_timings) {
    const Timings& t = report.timings;
    extra.push_back({"timings", "{\"phase1\": " + format_number(t.phase1_seconds) +
                                    ", \"phase2\": " + format_number(t.phase2_seconds) +
                                    ", \"lower_bound\": " + format_number(t.lower_bound_seconds) +
                                    "}"});
  }
  return solution_to_json(report.solution, meta, extra);
}

}  // namespace tspcn
