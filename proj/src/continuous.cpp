#include "tspcn/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tspcn/discrete.hpp"

namespace tspcn {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kParamTol = 1e-12;

// One smooth piece of the region boundary: a circular arc over
// [t0, t1] radians or a straight segment over t in [t0, t1] = [0, 1].
struct BoundaryPiece {
  bool arc{true};
  double t0{0};
  double t1{0};
  Point a;
  Point b;
  bool periodic{false};

  double length(double radius) const {
    return arc ? radius * (t1 - t0) : distance(a, b);
  }
};

Point piece_point(const BoundaryPiece& piece, const Circle& c, double t) {
  if (piece.arc) {
    return {c.center_x + c.radius * std::cos(t), c.center_y + c.radius * std::sin(t)};
  }
  return {piece.a.x + t * (piece.b.x - piece.a.x), piece.a.y + t * (piece.b.y - piece.a.y)};
}

// Liang-Barsky clip of [a, b] against the box; returns the parameter range.
std::optional<std::pair<double, double>> clip_to_box(const Point& a, const Point& b,
                                                     const SectorBox& box) {
  double lo = 0;
  double hi = 1;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - box.umin, box.umax - a.x, a.y - box.vmin, box.vmax - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0) {
      if (q[i] < 0) return std::nullopt;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0) {
      lo = std::max(lo, r);
    } else {
      hi = std::min(hi, r);
    }
    if (lo > hi) return std::nullopt;
  }
  return std::make_pair(lo, hi);
}

Point lerp(const Point& a, const Point& b, double t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

std::vector<BoundaryPiece> boundary_pieces(const FeasibleRegion& region) {
  const Circle& c = region.circle;
  std::vector<BoundaryPiece> pieces;
  if (!region.box) {
    pieces.push_back({true, 0, kTwoPi, {}, {}, true});
    return pieces;
  }
  const SectorBox& box = *region.box;

  std::vector<double> cuts{0, kTwoPi};
  auto add_cut = [&cuts](double angle) {
    angle = std::fmod(angle, kTwoPi);
    if (angle < 0) angle += kTwoPi;
    cuts.push_back(angle);
  };
  for (double u : {box.umin, box.umax}) {
    const double s = (u - c.center_x) / c.radius;
    if (std::abs(s) <= 1) {
      add_cut(std::acos(s));
      add_cut(-std::acos(s));
    }
  }
  for (double v : {box.vmin, box.vmax}) {
    const double s = (v - c.center_y) / c.radius;
    if (std::abs(s) <= 1) {
      add_cut(std::asin(s));
      add_cut(std::numbers::pi - std::asin(s));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    if (hi - lo <= 0) continue;
    const double mid = 0.5 * (lo + hi);
    const Point p{c.center_x + c.radius * std::cos(mid), c.center_y + c.radius * std::sin(mid)};
    if (box.contains(p)) pieces.push_back({true, lo, hi, {}, {}, false});
  }
  // Merge the arc through angle 0 when both ends survive; the whole circle
  // inside the box becomes one periodic piece.
  if (pieces.size() >= 2 && pieces.front().t0 == 0 && pieces.back().t1 == kTwoPi) {
    pieces.front().t0 = pieces.back().t0 - kTwoPi;
    pieces.pop_back();
  }
  if (pieces.size() == 1 && pieces.front().t1 - pieces.front().t0 >= kTwoPi) {
    pieces.front().periodic = true;
  }

  const Point corners[4] = {{box.umin, box.vmin}, {box.umax, box.vmin}, {box.umax, box.vmax},
                            {box.umin, box.vmax}};
  for (int e = 0; e < 4; ++e) {
    const Point& a = corners[e];
    const Point& b = corners[(e + 1) % 4];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double fx = a.x - c.center_x;
    const double fy = a.y - c.center_y;
    const double qa = dx * dx + dy * dy;
    if (qa == 0) {
      if (in_disk(a, c)) pieces.push_back({false, 0, 1, a, a, false});
      continue;
    }
    const double qb = 2 * (fx * dx + fy * dy);
    const double qc = fx * fx + fy * fy - c.radius * c.radius;
    const double disc = qb * qb - 4 * qa * qc;
    if (disc < 0) continue;
    const double root = std::sqrt(disc);
    const double lo = std::max(0.0, (-qb - root) / (2 * qa));
    const double hi = std::min(1.0, (-qb + root) / (2 * qa));
    if (lo > hi) continue;
    pieces.push_back({false, 0, 1, lerp(a, b, lo), lerp(a, b, hi), false});
  }
  return pieces;
}

Point clamp_to_region(Point p, const FeasibleRegion& region) {
  if (region.box) {
    p.x = std::clamp(p.x, region.box->umin, region.box->umax);
    p.y = std::clamp(p.y, region.box->vmin, region.box->vmax);
  }
  return p;
}

}  // namespace

bool FeasibleRegion::contains(const Point& p, double tol) const {
  if (!in_disk(p, circle, tol)) return false;
  return !box || box->contains(p, tol);
}

double detour_length(const Point& prev, const Point& p, const Point& next) {
  return distance(prev, p) + distance(p, next);
}

Point point_subproblem(const Point& prev, const Point& next, const FeasibleRegion& region) {
  if (!std::isfinite(prev.x) || !std::isfinite(prev.y) || !std::isfinite(next.x) ||
      !std::isfinite(next.y)) {
    throw std::invalid_argument("contract violation: point_subproblem neighbours must be finite");
  }
  const Circle& c = region.circle;
  if (c.radius == 0) return c.center();

  // Segment meets the region: the unconstrained optimum is attainable.
  // Of the zero-detour points take the one furthest along toward next, so a
  // point sitting on its predecessor can slide off it in later sweeps.
  double lo = 0;
  double hi = 1;
  if (region.box) {
    const auto range = clip_to_box(prev, next, *region.box);
    if (range) {
      lo = range->first;
      hi = range->second;
    } else {
      lo = 1;
      hi = 0;
    }
  }
  if (lo <= hi) {
    const Point a = lerp(prev, next, lo);
    const Point b = lerp(prev, next, hi);
    const Point q = closest_point_on_segment(a, b, c.center());
    if (in_disk(q, c)) {
      const double seg = distance(prev, next);
      Point pick = q;
      if (seg > 0) {
        // Chord of the full line through the disk, centred on the foot of the perpendicular.
        const double tf = ((c.center_x - prev.x) * (next.x - prev.x) + (c.center_y - prev.y) * (next.y - prev.y)) /
                          (seg * seg);
        const double d = distance(lerp(prev, next, tf), c.center());
        const double half = std::sqrt(std::max(0.0, c.radius * c.radius - d * d)) / seg;
        const double tq = ((q.x - prev.x) * (next.x - prev.x) + (q.y - prev.y) * (next.y - prev.y)) / (seg * seg);
        pick = lerp(prev, next, std::clamp(tf + half, tq, hi));
      }
      return clamp_to_region(project_to_disk(pick, c), region);
    }
  }
  if (!region.box && prev == next) return project_to_disk(prev, c);

  // Otherwise the minimizer lies on the boundary: coarse scan, then golden
  // section around every sampled local minimum.
  const std::vector<BoundaryPiece> pieces = boundary_pieces(region);
  double total_length = 0;
  for (const auto& piece : pieces) total_length += piece.length(c.radius);

  auto objective = [&](const BoundaryPiece& piece, double t) {
    return detour_length(prev, piece_point(piece, c, t), next);
  };

  Point best = c.center();
  double best_f = std::numeric_limits<double>::infinity();
  auto offer = [&](const Point& p, double f) {
    if (f < best_f) {
      best_f = f;
      best = p;
    }
  };

  for (const auto& piece : pieces) {
    const double len = piece.length(c.radius);
    const int count = total_length > 0
                          ? std::max(2, static_cast<int>(std::lround(kBoundaryScanPoints * len / total_length)))
                          : 2;
    const double step = (piece.t1 - piece.t0) / (count - 1);
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const double t = i + 1 == count ? piece.t1 : piece.t0 + step * i;
      values[static_cast<std::size_t>(i)] = objective(piece, t);
      offer(piece_point(piece, c, t), values[static_cast<std::size_t>(i)]);
    }
    if (step <= 0) continue;
    for (int i = 0; i < count; ++i) {
      const double here = values[static_cast<std::size_t>(i)];
      const bool left_ok = i == 0 ? !piece.periodic || here <= values[static_cast<std::size_t>(count - 2)]
                                  : here <= values[static_cast<std::size_t>(i - 1)];
      const bool right_ok = i + 1 == count ? !piece.periodic || here <= values[1]
                                           : here <= values[static_cast<std::size_t>(i + 1)];
      if (!left_ok || !right_ok) continue;
      const double center_t = i + 1 == count ? piece.t1 : piece.t0 + step * i;
      double lo = center_t - step;
      double hi = center_t + step;
      if (!piece.periodic) {
        lo = std::max(lo, piece.t0);
        hi = std::min(hi, piece.t1);
      }
      constexpr double kInvPhi = 0.6180339887498949;
      double x1 = hi - kInvPhi * (hi - lo);
      double x2 = lo + kInvPhi * (hi - lo);
      double f1 = objective(piece, x1);
      double f2 = objective(piece, x2);
      for (int iter = 0; iter < 200 && hi - lo > kParamTol; ++iter) {
        if (f1 <= f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - kInvPhi * (hi - lo);
          f1 = objective(piece, x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + kInvPhi * (hi - lo);
          f2 = objective(piece, x2);
        }
      }
      const double t = 0.5 * (lo + hi);
      offer(piece_point(piece, c, t), objective(piece, t));
    }
  }
  return clamp_to_region(best, region);
}

std::vector<FeasibleRegion> build_regions(const Instance& instance, const std::vector<int>& slots,
                                          int k, SectorMode mode) {
  if (slots.size() != instance.circles.size()) {
    throw std::invalid_argument("build_regions: need one slot per circle");
  }
  std::vector<FeasibleRegion> regions;
  regions.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Circle& c = instance.circles[i];
    FeasibleRegion region{c, std::nullopt};
    if (mode == SectorMode::SectorBox) region.box = sector_box(c, slots[i], k);
    regions.push_back(region);
  }
  return regions;
}

ContinuousSolution make_solution(const std::vector<int>& order, const std::vector<Point>& points) {
  ContinuousSolution s;
  s.order = order;
  s.points = points;
  const std::size_t n = order.size();
  s.edge_lengths.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double d = distance(points[static_cast<std::size_t>(order[t])],
                              points[static_cast<std::size_t>(order[(t + 1) % n])]);
    s.edge_lengths.push_back(d);
    s.total += d;
  }
  return s;
}

ContinuousSolution sequence_refine(const Instance& instance, const std::vector<int>& order,
                                   const std::vector<Point>& start_points,
                                   const std::vector<FeasibleRegion>& regions,
                                   const RefineOptions& options, RefineTrace* trace) {
  const int n = static_cast<int>(instance.circles.size());
  if (!is_valid_order(order, n)) {
    throw std::invalid_argument("contract violation: order is not a permutation of the circles");
  }
  if (start_points.size() != order.size() || regions.size() != order.size()) {
    throw std::invalid_argument("contract violation: need one start point and region per circle");
  }
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (!regions[i].contains(start_points[i])) {
      throw std::invalid_argument("contract violation: start point of circle " + std::to_string(i) +
                                  " lies outside its feasible region");
    }
  }

  std::vector<Point> points = start_points;
  double total = cyclic_length(points, order);
  const std::size_t len = order.size();
  int sweeps = 0;
  while (sweeps < options.descent_max_sweeps) {
    ++sweeps;
    const double before_sweep = total;
    for (std::size_t t = 0; t < len; ++t) {
      const auto c = static_cast<std::size_t>(order[t]);
      const Point& prev = points[static_cast<std::size_t>(order[(t + len - 1) % len])];
      const Point& next = points[static_cast<std::size_t>(order[(t + 1) % len])];
      const Point candidate = point_subproblem(prev, next, regions[c]);
      const double old_f = detour_length(prev, points[c], next);
      const double new_f = detour_length(prev, candidate, next);
      if (!(new_f < old_f)) continue;
      if (trace && trace->check_every_update) {
        const double before = cyclic_length(points, order);
        points[c] = candidate;
        const double after = cyclic_length(points, order);
        trace->max_update_increase = std::max(trace->max_update_increase, after - before);
      } else {
        points[c] = candidate;
      }
      if (trace) ++trace->updates;
    }
    total = cyclic_length(points, order);
    const double improvement = before_sweep - total;
    if (!(before_sweep > 0) || improvement <= options.descent_tol * before_sweep) break;
  }
  if (trace) trace->sweeps = sweeps;
  return make_solution(order, points);
}

}  // namespace tspcn
