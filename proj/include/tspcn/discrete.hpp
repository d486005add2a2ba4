#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tspcn/geometry.hpp"
#include "tspcn/model.hpp"

namespace tspcn {

inline constexpr int kMaxGraphNodes = 4096;

/// Thrown when a solver is asked for more than it is configured to handle.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense distance matrix over all k*N discretization nodes. Node id is
/// circle * k + slot. Entries between nodes of the same circle are unusable.
class NodeGraph {
 public:
  NodeGraph(const Instance& instance, int k);

  int k() const { return k_; }
  int circle_count() const { return circles_; }
  int node_count() const { return circles_ * k_; }
  const std::vector<DiscreteNode>& nodes() const { return nodes_; }

  int node_id(int circle, int slot) const { return circle * k_ + slot; }
  bool usable(int p, int q) const { return p / k_ != q / k_; }
  /// Distance between two nodes; infinity for unusable pairs.
  double dist(int p, int q) const {
    return dist_[static_cast<std::size_t>(p) * static_cast<std::size_t>(node_count()) +
                 static_cast<std::size_t>(q)];
  }
  double dist(int ci, int si, int cj, int sj) const { return dist(node_id(ci, si), node_id(cj, sj)); }

  /// Cheapest slot pair between two distinct circles.
  double min_arc_cost(int ci, int cj) const;

 private:
  int k_;
  int circles_;
  std::vector<DiscreteNode> nodes_;
  std::vector<double> dist_;
};

NodeGraph build_node_graph(const Instance& instance, int k);

/// Length of the closed tour through the chosen nodes.
double discrete_length(const NodeGraph& graph, const std::vector<int>& order,
                       const std::vector<int>& slots);

/// Rotates to start at circle 0 and orients so that order[1] < order[N-1].
std::vector<int> canonical_order(std::vector<int> order);

bool is_valid_order(const std::vector<int>& order, int n);

/// Exact Held-Karp style program over (subset, terminal node) states.
/// Throws SizeLimitError when N exceeds exact_limit.
DiscreteTour solve_exact_dp(const Instance& instance, int k, int exact_limit = 16);
DiscreteTour solve_exact_dp(const NodeGraph& graph, int exact_limit = 16);

struct CuttingPlaneResult {
  DiscreteTour tour;
  bool proven_optimal{false};
  /// Best proven bound on the discrete optimum when the search stopped.
  double lower_bound{0};
  /// Assignment relaxation value at the root (min-slot-pair arc costs).
  double root_bound{0};
  /// Number of distinct subtour-elimination cuts generated.
  int cuts{0};
  std::int64_t nodes_explored{0};
};

/// Relax-and-cut branch and bound over circle successor assignments.
CuttingPlaneResult solve_cutting_plane(const Instance& instance, int k,
                                       std::optional<double> time_limit = std::nullopt);
CuttingPlaneResult solve_cutting_plane(const NodeGraph& graph,
                                       std::optional<double> time_limit = std::nullopt);

/// Multi-start nearest neighbour + 2-opt + slot re-optimization.
DiscreteTour solve_heuristic(const Instance& instance, int k, std::uint64_t seed);
DiscreteTour solve_heuristic(const NodeGraph& graph, std::uint64_t seed);

struct SlotAssignment {
  std::vector<int> slots;  // indexed by circle
  double length{0};
};

/// Optimal slots for a fixed cyclic order; ties go to the lexicographically
/// smallest slot vector.
SlotAssignment reoptimize_slots(const NodeGraph& graph, const std::vector<int>& order);
SlotAssignment reoptimize_slots(const Instance& instance, const std::vector<int>& order, int k);

/// Splits a successor permutation into directed cycles, each starting at its
/// smallest circle, sorted by that circle.
std::vector<std::vector<int>> find_subtours(const std::vector<int>& successor);
std::vector<std::vector<int>> find_subtours(const std::map<int, int>& successor);

/// Minimum-cost perfect assignment. cost is row-major n*n; infinite entries
/// are forbidden. Returns the column assigned to each row, or nullopt when
/// every assignment uses a forbidden entry.
std::optional<std::vector<int>> solve_assignment(const std::vector<double>& cost, int n);

/// Exact tour over circle centers (radii ignored); N <= exact_limit.
double centers_tour_length(const Instance& instance, int exact_limit = 16);

}  // namespace tspcn
