#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tspcn/geometry.hpp"
#include "tspcn/model.hpp"

namespace tspcn {

/// Disk, optionally intersected with an axis-aligned box.
struct FeasibleRegion {
  Circle circle;
  std::optional<SectorBox> box;

  bool contains(const Point& p, double tol = 1e-9) const;
};

inline constexpr int kBoundaryScanPoints = 64;

/// Minimizes |p - prev| + |p - next| over the region.
Point point_subproblem(const Point& prev, const Point& next, const FeasibleRegion& region);

double detour_length(const Point& prev, const Point& p, const Point& next);

std::vector<FeasibleRegion> build_regions(const Instance& instance, const std::vector<int>& slots,
                                          int k, SectorMode mode);

/// Observability hook for the descent loop.
struct RefineTrace {
  int sweeps{0};
  std::int64_t updates{0};
  /// Largest increase of the full tour length caused by a single point
  /// update, recomputed from scratch around each update.
  double max_update_increase{0};
  bool check_every_update{false};
};

struct RefineOptions {
  double descent_tol{1e-10};
  int descent_max_sweeps{10000};
};

/// Cyclic coordinate descent over the tour points for a fixed order.
ContinuousSolution sequence_refine(const Instance& instance, const std::vector<int>& order,
                                   const std::vector<Point>& start_points,
                                   const std::vector<FeasibleRegion>& regions,
                                   const RefineOptions& options = {},
                                   RefineTrace* trace = nullptr);

/// Builds the solution record (edge lengths and total) for fixed points.
ContinuousSolution make_solution(const std::vector<int>& order, const std::vector<Point>& points);

}  // namespace tspcn
