#include "tspcn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tspcn {

namespace {

void check_slot(int slot, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1, got " + std::to_string(k));
  if (slot < 0 || slot >= k) {
    throw std::out_of_range("slot " + std::to_string(slot) + " outside [0, " + std::to_string(k) +
                            ")");
  }
}

Point on_circle(const Circle& c, double degrees) {
  const Point dir = unit_vector_deg(degrees);
  return {c.center_x + c.radius * dir.x, c.center_y + c.radius * dir.y};
}

}  // namespace

double slot_angle(int slot, int k) {
  check_slot(slot, k);
  return 360.0 * slot / k + 180.0 / k;
}

Point unit_vector_deg(double degrees) {
  double d = std::fmod(degrees, 360.0);
  if (d < 0) d += 360.0;
  if (d == 0) return {1, 0};
  if (d == 90) return {0, 1};
  if (d == 180) return {-1, 0};
  if (d == 270) return {0, -1};
  const double rad = d * (std::numbers::pi / 180.0);
  return {std::cos(rad), std::sin(rad)};
}

Point node_point(const Circle& circle, int slot, int k) {
  return on_circle(circle, slot_angle(slot, k));
}

DiscreteNode make_node(const Circle& circle, int circle_index, int slot, int k) {
  const double angle = slot_angle(slot, k);
  return {circle_index, slot, angle, on_circle(circle, angle)};
}

double node_distance(const Circle& ci, int slot_i, const Circle& cj, int slot_j, int k) {
  return distance(node_point(ci, slot_i, k), node_point(cj, slot_j, k));
}

SectorBox sector_box(const Circle& circle, int slot, int k) {
  check_slot(slot, k);
  const double start = 360.0 * slot / k;
  const double end = 360.0 * (slot + 1) / k;
  const Point c = circle.center();
  SectorBox box{c.x, c.x, c.y, c.y};
  auto include = [&box](const Point& p) {
    box.umin = std::min(box.umin, p.x);
    box.umax = std::max(box.umax, p.x);
    box.vmin = std::min(box.vmin, p.y);
    box.vmax = std::max(box.vmax, p.y);
  };
  include(on_circle(circle, start));
  include(on_circle(circle, end));
  for (double axis : {0.0, 90.0, 180.0, 270.0, 360.0}) {
    if (axis >= start && axis <= end) include(on_circle(circle, axis));
  }
  return box;
}

bool in_disk(const Point& p, const Circle& circle, double tol) {
  return distance(p, circle.center()) <= circle.radius + tol;
}

Point project_to_disk(const Point& p, const Circle& circle) {
  const double dx = p.x - circle.center_x;
  const double dy = p.y - circle.center_y;
  const double d = std::hypot(dx, dy);
  if (d <= circle.radius) return p;
  const double s = circle.radius / d;
  return {circle.center_x + s * dx, circle.center_y + s * dy};
}

Point closest_point_on_segment(const Point& a, const Point& b, const Point& p) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0) return a;
  const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  if (t == 0) return a;
  if (t == 1) return b;
  return {a.x + t * dx, a.y + t * dy};
}

std::optional<Point> segment_disk_hit(const Point& a, const Point& b, const Circle& circle) {
  const Point q = closest_point_on_segment(a, b, circle.center());
  if (in_disk(q, circle)) return q;
  return std::nullopt;
}

}  // namespace tspcn
