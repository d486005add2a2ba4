#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the solver code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "tspcn/continuous.hpp"
#include "tspcn/model.hpp"

namespace tspcn::oracle {

inline double deg_to_rad(double d) { return d * 3.14159265358979323846 / 180.0; }

inline Point slot_point(const Circle& c, int slot, int k) {
  const double angle = deg_to_rad((360.0 * slot + 180.0) / k);
  return {c.center_x + c.radius * std::cos(angle), c.center_y + c.radius * std::sin(angle)};
}

inline double dist(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Exhaustive minimum over all (N-1)! orders (circle 0 first) and k^N slot vectors.
inline double brute_force_discrete(const Instance& inst, int k) {
  const int n = static_cast<int>(inst.circles.size());
  std::vector<std::vector<Point>> pts(n);
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < k; ++s) pts[i].push_back(slot_point(inst.circles[i], s, k));
  }
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  long combos = 1;
  for (int i = 0; i < n; ++i) combos *= k;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> slots(n);
  do {
    std::vector<int> order{0};
    order.insert(order.end(), rest.begin(), rest.end());
    for (long code = 0; code < combos; ++code) {
      long c = code;
      for (int i = 0; i < n; ++i) {
        slots[i] = static_cast<int>(c % k);
        c /= k;
      }
      double len = 0;
      for (int t = 0; t < n; ++t) {
        const int a = order[t];
        const int b = order[(t + 1) % n];
        len += dist(pts[a][slots[a]], pts[b][slots[b]]);
      }
      best = std::min(best, len);
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

/// Exhaustive minimum over slot vectors for a fixed order.
inline double brute_force_slots(const Instance& inst, const std::vector<int>& order, int k) {
  const int n = static_cast<int>(inst.circles.size());
  long combos = 1;
  for (int i = 0; i < n; ++i) combos *= k;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> slots(n);
  for (long code = 0; code < combos; ++code) {
    long c = code;
    for (int i = 0; i < n; ++i) {
      slots[i] = static_cast<int>(c % k);
      c /= k;
    }
    double len = 0;
    for (int t = 0; t < n; ++t) {
      const int a = order[t];
      const int b = order[(t + 1) % n];
      len += dist(slot_point(inst.circles[a], slots[a], k), slot_point(inst.circles[b], slots[b], k));
    }
    best = std::min(best, len);
  }
  return best;
}

/// Classical Held-Karp over the circle centers.
inline double held_karp_centers(const Instance& inst) {
  const int n = static_cast<int>(inst.circles.size());
  if (n == 2) return 2 * dist(inst.circles[0].center(), inst.circles[1].center());
  const int m = n - 1;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[i][j] = dist(inst.circles[i].center(), inst.circles[j].center());
  }
  std::vector<std::vector<double>> dp(1u << m, std::vector<double>(m, inf));
  for (int j = 0; j < m; ++j) dp[1u << j][j] = d[0][j + 1];
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    for (int j = 0; j < m; ++j) {
      if (!(mask & (1u << j)) || dp[mask][j] == inf) continue;
      for (int t = 0; t < m; ++t) {
        if (mask & (1u << t)) continue;
        const unsigned nm = mask | (1u << t);
        dp[nm][t] = std::min(dp[nm][t], dp[mask][j] + d[j + 1][t + 1]);
      }
    }
  }
  double best = inf;
  for (int j = 0; j < m; ++j) best = std::min(best, dp[(1u << m) - 1][j] + d[j + 1][0]);
  return best;
}

/// Best objective over a 100 x 100 grid clipped to the region, plus 400
/// boundary-circle samples that fall inside it.
inline double dense_grid_best(const Point& prev, const Point& next, const FeasibleRegion& region) {
  const Circle& c = region.circle;
  double xmin = c.center_x - c.radius, xmax = c.center_x + c.radius;
  double ymin = c.center_y - c.radius, ymax = c.center_y + c.radius;
  if (region.box) {
    xmin = std::max(xmin, region.box->umin);
    xmax = std::min(xmax, region.box->umax);
    ymin = std::max(ymin, region.box->vmin);
    ymax = std::min(ymax, region.box->vmax);
  }
  auto inside = [&](const Point& p) {
    if (dist(p, c.center()) > c.radius) return false;
    if (!region.box) return true;
    return p.x >= region.box->umin && p.x <= region.box->umax && p.y >= region.box->vmin &&
           p.y <= region.box->vmax;
  };
  auto f = [&](const Point& p) { return dist(prev, p) + dist(p, next); };
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const Point p{xmin + (xmax - xmin) * i / 99.0, ymin + (ymax - ymin) * j / 99.0};
      if (inside(p)) best = std::min(best, f(p));
    }
  }
  for (int i = 0; i < 400; ++i) {
    const double a = 2 * 3.14159265358979323846 * i / 400.0;
    const Point p{c.center_x + c.radius * std::cos(a), c.center_y + c.radius * std::sin(a)};
    if (inside(p)) best = std::min(best, f(p));
  }
  return best;
}

}  // namespace tspcn::oracle
