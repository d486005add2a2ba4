#pragma once

#include <optional>

#include "tspcn/model.hpp"

namespace tspcn {

/// A discretization node: midpoint of one of k equal arcs of a circle.
struct DiscreteNode {
  int circle{0};
  int slot{0};
  double angle_deg{0};
  Point point;
};

/// Axis-aligned bounds on a phase-2 point.
struct SectorBox {
  double umin{0};
  double umax{0};
  double vmin{0};
  double vmax{0};

  bool contains(const Point& p, double tol = 0) const {
    return p.x >= umin - tol && p.x <= umax + tol && p.y >= vmin - tol && p.y <= vmax + tol;
  }

  friend bool operator==(const SectorBox&, const SectorBox&) = default;
};

/// Slot s of k spans [360s/k, 360(s+1)/k] degrees; returns the arc midpoint.
double slot_angle(int slot, int k);

/// cos/sin of an angle in degrees, exact at multiples of 90.
Point unit_vector_deg(double degrees);

Point node_point(const Circle& circle, int slot, int k);
DiscreteNode make_node(const Circle& circle, int circle_index, int slot, int k);

/// Distance between two discretization nodes. Symmetric.
double node_distance(const Circle& ci, int slot_i, const Circle& cj, int slot_j, int k);

/// Bounding box of the closed pie slice covered by the slot's arc.
SectorBox sector_box(const Circle& circle, int slot, int k);

/// Nearest point of the closed disk.
Point project_to_disk(const Point& p, const Circle& circle);

/// Point of segment [a, b] closest to the circle center, if that point lies
/// in the closed disk.
std::optional<Point> segment_disk_hit(const Point& a, const Point& b, const Circle& circle);

/// Closest point of segment [a, b] to p.
Point closest_point_on_segment(const Point& a, const Point& b, const Point& p);

bool in_disk(const Point& p, const Circle& circle, double tol = 0);

}  // namespace tspcn
