#include "tspcn/discrete.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>

namespace tspcn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Slack for treating two objective values as tied; only absorbs rounding
// from summing the same edges in a different order.
double tie_tol(double value) { return 1e-12 * std::max(1.0, std::abs(value)); }

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

// Optimal cycle cost through the circles of `order` with slots restricted by
// `fixed` (-1 = free). Chain program seeded from each allowed slot of order[0].
double constrained_slot_cost(const NodeGraph& g, const std::vector<int>& order,
                             const std::vector<int>& fixed, std::vector<int>* best_slots = nullptr) {
  const int k = g.k();
  const std::size_t n = order.size();
  double best = kInf;
  std::vector<double> cur(idx(k)), next(idx(k));
  // parent[t][l] = slot of order[t-1] on the best chain reaching slot l of order[t]
  std::vector<std::vector<int>> parent(best_slots ? n : 0, std::vector<int>(idx(k), -1));

  auto allowed = [&](int circle, int slot) {
    const int f = fixed[idx(circle)];
    return f < 0 || f == slot;
  };

  for (int s0 = 0; s0 < k; ++s0) {
    if (!allowed(order[0], s0)) continue;
    std::fill(cur.begin(), cur.end(), kInf);
    cur[idx(s0)] = 0;
    for (std::size_t t = 1; t < n; ++t) {
      const int from = order[t - 1];
      const int to = order[t];
      for (int l = 0; l < k; ++l) {
        next[idx(l)] = kInf;
        if (!allowed(to, l)) continue;
        for (int m = 0; m < k; ++m) {
          if (cur[idx(m)] == kInf) continue;
          const double c = cur[idx(m)] + g.dist(from, m, to, l);
          if (c < next[idx(l)]) {
            next[idx(l)] = c;
            if (best_slots) parent[t][idx(l)] = m;
          }
        }
      }
      std::swap(cur, next);
    }
    int best_last = -1;
    double closed = kInf;
    for (int l = 0; l < k; ++l) {
      if (cur[idx(l)] == kInf) continue;
      const double c = cur[idx(l)] + g.dist(order[n - 1], l, order[0], s0);
      if (c < closed) {
        closed = c;
        best_last = l;
      }
    }
    if (closed < best) {
      best = closed;
      if (best_slots) {
        best_slots->assign(n, -1);
        int l = best_last;
        for (std::size_t t = n - 1; t >= 1; --t) {
          (*best_slots)[idx(order[t])] = l;
          l = parent[t][idx(l)];
        }
        (*best_slots)[idx(order[0])] = s0;
      }
    }
  }
  return best;
}

double fast_slot_cost(const NodeGraph& g, const std::vector<int>& order, std::vector<int>* slots) {
  const std::vector<int> free(order.size(), -1);
  return constrained_slot_cost(g, order, free, slots);
}

std::vector<double> min_arc_matrix(const NodeGraph& g) {
  const int n = g.circle_count();
  std::vector<double> cost(idx(n * n), kInf);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) cost[idx(i * n + j)] = g.min_arc_cost(i, j);
    }
  }
  return cost;
}

// 2-opt to a local optimum under a symmetric per-position edge cost.
template <typename EdgeCost>
void two_opt(std::vector<int>& tour, EdgeCost&& edge) {
  const std::size_t n = tour.size();
  if (n < 4) return;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        const std::size_t jn = (j + 1) % n;
        if (jn == i) continue;
        const double before = edge(tour[i], tour[i + 1]) + edge(tour[j], tour[jn]);
        const double after = edge(tour[i], tour[j]) + edge(tour[i + 1], tour[jn]);
        if (after < before - tie_tol(before)) {
          std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(i + 1),
                       tour.begin() + static_cast<std::ptrdiff_t>(j + 1));
          improved = true;
        }
      }
    }
  }
}

std::vector<int> nearest_neighbour(const std::vector<double>& cost, int n, int start) {
  std::vector<int> tour{start};
  std::vector<bool> used(idx(n), false);
  used[idx(start)] = true;
  for (int step = 1; step < n; ++step) {
    const int from = tour.back();
    int best = -1;
    for (int j = 0; j < n; ++j) {
      if (used[idx(j)]) continue;
      if (best < 0 || cost[idx(from * n + j)] < cost[idx(from * n + best)]) best = j;
    }
    used[idx(best)] = true;
    tour.push_back(best);
  }
  return tour;
}

DiscreteTour finish_tour(const NodeGraph& g, const std::vector<int>& order) {
  DiscreteTour tour;
  tour.order = canonical_order(order);
  tour.k = g.k();
  SlotAssignment assignment = reoptimize_slots(g, tour.order);
  tour.slots = std::move(assignment.slots);
  tour.length = assignment.length;
  return tour;
}

}  // namespace

NodeGraph::NodeGraph(const Instance& instance, int k)
    : k_(k), circles_(static_cast<int>(instance.circles.size())) {
  if (k < 1) throw std::invalid_argument("k must be >= 1, got " + std::to_string(k));
  validate_instance(instance);
  if (static_cast<long long>(circles_) * k > kMaxGraphNodes) {
    throw SizeLimitError("node graph too large: " + std::to_string(circles_) + " circles x k=" +
                         std::to_string(k) + " exceeds " + std::to_string(kMaxGraphNodes) +
                         " nodes");
  }
  nodes_.reserve(idx(node_count()));
  for (int c = 0; c < circles_; ++c) {
    for (int s = 0; s < k; ++s) nodes_.push_back(make_node(instance.circles[idx(c)], c, s, k));
  }
  const int m = node_count();
  dist_.assign(idx(m) * idx(m), kInf);
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      if (!usable(p, q)) continue;
      const double d = distance(nodes_[idx(p)].point, nodes_[idx(q)].point);
      dist_[idx(p) * idx(m) + idx(q)] = d;
      dist_[idx(q) * idx(m) + idx(p)] = d;
    }
  }
}

double NodeGraph::min_arc_cost(int ci, int cj) const {
  double best = kInf;
  for (int a = 0; a < k_; ++a) {
    for (int b = 0; b < k_; ++b) best = std::min(best, dist(ci, a, cj, b));
  }
  return best;
}

NodeGraph build_node_graph(const Instance& instance, int k) { return NodeGraph(instance, k); }

double discrete_length(const NodeGraph& graph, const std::vector<int>& order,
                       const std::vector<int>& slots) {
  double total = 0;
  const std::size_t n = order.size();
  for (std::size_t t = 0; t < n; ++t) {
    const int a = order[t];
    const int b = order[(t + 1) % n];
    total += graph.dist(a, slots[idx(a)], b, slots[idx(b)]);
  }
  return total;
}

bool is_valid_order(const std::vector<int>& order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<bool> seen(idx(n), false);
  for (int c : order) {
    if (c < 0 || c >= n || seen[idx(c)]) return false;
    seen[idx(c)] = true;
  }
  return true;
}

std::vector<int> canonical_order(std::vector<int> order) {
  const auto zero = std::find(order.begin(), order.end(), 0);
  if (zero != order.end()) std::rotate(order.begin(), zero, order.end());
  if (order.size() > 2 && order[1] > order.back()) std::reverse(order.begin() + 1, order.end());
  return order;
}

SlotAssignment reoptimize_slots(const NodeGraph& graph, const std::vector<int>& order) {
  if (!is_valid_order(order, graph.circle_count())) {
    throw std::invalid_argument("reoptimize_slots: order is not a permutation of the circles");
  }
  const double optimum = fast_slot_cost(graph, order, nullptr);
  const double tol = tie_tol(optimum);
  std::vector<int> fixed(order.size(), -1);
  for (std::size_t c = 0; c < fixed.size(); ++c) {
    for (int s = 0; s < graph.k(); ++s) {
      fixed[c] = s;
      if (constrained_slot_cost(graph, order, fixed) <= optimum + tol) break;
    }
  }
  return {fixed, discrete_length(graph, order, fixed)};
}

SlotAssignment reoptimize_slots(const Instance& instance, const std::vector<int>& order, int k) {
  return reoptimize_slots(NodeGraph(instance, k), order);
}

DiscreteTour solve_exact_dp(const Instance& instance, int k, int exact_limit) {
  if (static_cast<int>(instance.circles.size()) > exact_limit) {
    throw SizeLimitError("exact size limit: N=" + std::to_string(instance.circles.size()) +
                         " exceeds exact_limit=" + std::to_string(exact_limit) +
                         "; use the cutting-plane or heuristic method");
  }
  return solve_exact_dp(NodeGraph(instance, k), exact_limit);
}

DiscreteTour solve_exact_dp(const NodeGraph& g, int exact_limit) {
  const int n = g.circle_count();
  const int k = g.k();
  if (n > exact_limit) {
    throw SizeLimitError("exact size limit: N=" + std::to_string(n) + " exceeds exact_limit=" +
                         std::to_string(exact_limit) +
                         "; use the cutting-plane or heuristic method");
  }
  // Circle 0 is the seed; circles 1..n-1 map to bits 0..m-1.
  const int m = n - 1;
  const int width = m * k;
  const std::size_t masks = std::size_t{1} << m;
  if (masks * idx(width) > (std::size_t{1} << 28)) {
    throw SizeLimitError("exact size limit: dynamic program table too large for N=" +
                         std::to_string(n) + ", k=" + std::to_string(k) +
                         "; use the cutting-plane or heuristic method");
  }
  auto node = [k](int bit, int slot) { return bit * k + slot; };
  // Local distance table between non-seed nodes.
  std::vector<double> local(idx(width) * idx(width), kInf);
  for (int a = 0; a < width; ++a) {
    for (int b = 0; b < width; ++b) {
      if (a / k != b / k) local[idx(a * width + b)] = g.dist(g.node_id(a / k + 1, a % k), g.node_id(b / k + 1, b % k));
    }
  }

  std::vector<double> f(masks * idx(width));
  auto at = [&](std::size_t mask, int v) -> double& { return f[mask * idx(width) + idx(v)]; };
  const std::size_t full = masks - 1;

  std::vector<int> best_order;
  double best_value = kInf;

  for (int s0 = 0; s0 < k; ++s0) {
    std::fill(f.begin(), f.end(), kInf);
    auto seed_dist = [&](int v) { return g.dist(0, s0, v / k + 1, v % k); };
    for (int b = 0; b < m; ++b) {
      for (int l = 0; l < k; ++l) at(std::size_t{1} << b, node(b, l)) = seed_dist(node(b, l));
    }
    for (std::size_t mask = 1; mask < masks; ++mask) {
      for (int v = 0; v < width; ++v) {
        if (!(mask >> (v / k) & 1U)) continue;
        const double base = at(mask, v);
        if (base == kInf) continue;
        const double* row = &local[idx(v * width)];
        for (int b = 0; b < m; ++b) {
          if (mask >> b & 1U) continue;
          const std::size_t next_mask = mask | (std::size_t{1} << b);
          for (int l = 0; l < k; ++l) {
            const int w = node(b, l);
            const double c = base + row[w];
            double& slot = at(next_mask, w);
            if (c < slot) slot = c;
          }
        }
      }
    }
    double value = kInf;
    for (int v = 0; v < width; ++v) value = std::min(value, at(full, v) + seed_dist(v));
    if (value > best_value + tie_tol(best_value)) continue;

    // Lexicographically smallest circle order among this seed's optima.
    // completion(mask, w): cheapest path from w through the circles outside
    // `mask` back to the seed, equal by symmetry to f over the complement.
    const double tol = tie_tol(value);
    std::vector<int> order{0};
    std::vector<std::pair<int, double>> frontier;  // (node, prefix cost); -1 = seed
    frontier.emplace_back(-1, 0.0);
    std::size_t visited = 0;
    for (int step = 0; step < m; ++step) {
      const std::size_t remaining = full & ~visited;
      bool advanced = false;
      for (int b = 0; b < m && !advanced; ++b) {
        if (visited >> b & 1U) continue;
        std::vector<std::pair<int, double>> next;
        for (int l = 0; l < k; ++l) {
          const int w = node(b, l);
          double prefix = kInf;
          for (const auto& [v, cost] : frontier) {
            const double step_cost = v < 0 ? seed_dist(w) : local[idx(v * width + w)];
            prefix = std::min(prefix, cost + step_cost);
          }
          if (prefix + at(remaining, w) <= value + tol) next.emplace_back(w, prefix);
        }
        if (!next.empty()) {
          frontier = std::move(next);
          visited |= std::size_t{1} << b;
          order.push_back(b + 1);
          advanced = true;
        }
      }
      if (!advanced) throw std::logic_error("exact dp: reconstruction lost the optimal path");
    }
    if (value < best_value - tie_tol(best_value) || best_order.empty() || order < best_order) {
      best_order = order;
    }
    best_value = std::min(best_value, value);
  }
  return finish_tour(g, best_order);
}

std::vector<std::vector<int>> find_subtours(const std::vector<int>& successor) {
  const int n = static_cast<int>(successor.size());
  std::vector<int> indegree(idx(n), 0);
  for (int i = 0; i < n; ++i) {
    const int s = successor[idx(i)];
    if (s < 0 || s >= n) {
      throw std::invalid_argument("contract violation: successor of " + std::to_string(i) +
                                  " is out of range");
    }
    if (++indegree[idx(s)] > 1) {
      throw std::invalid_argument("contract violation: circle " + std::to_string(s) +
                                  " has more than one predecessor");
    }
  }
  std::vector<bool> seen(idx(n), false);
  std::vector<std::vector<int>> cycles;
  for (int start = 0; start < n; ++start) {
    if (seen[idx(start)]) continue;
    std::vector<int> cycle;
    for (int c = start; !seen[idx(c)]; c = successor[idx(c)]) {
      seen[idx(c)] = true;
      cycle.push_back(c);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

std::vector<std::vector<int>> find_subtours(const std::map<int, int>& successor) {
  std::vector<int> dense;
  int expected = 0;
  for (const auto& [from, to] : successor) {
    if (from != expected++) {
      throw std::invalid_argument("contract violation: successor keys must be 0..N-1");
    }
    dense.push_back(to);
  }
  return find_subtours(dense);
}

std::optional<std::vector<int>> solve_assignment(const std::vector<double>& cost, int n) {
  // Shortest augmenting path Hungarian method with potentials, 1-based.
  std::vector<double> u(idx(n + 1), 0), v(idx(n + 1), 0), minv(idx(n + 1));
  std::vector<int> p(idx(n + 1), 0), way(idx(n + 1), 0);
  std::vector<bool> used(idx(n + 1));
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[idx(j0)] = true;
      const int i0 = p[idx(j0)];
      double delta = kInf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[idx(j)]) continue;
        const double cur = cost[idx((i0 - 1) * n + (j - 1))] - u[idx(i0)] - v[idx(j)];
        if (cur < minv[idx(j)]) {
          minv[idx(j)] = cur;
          way[idx(j)] = j0;
        }
        if (minv[idx(j)] < delta) {
          delta = minv[idx(j)];
          j1 = j;
        }
      }
      if (j1 < 0 || delta == kInf) return std::nullopt;
      for (int j = 0; j <= n; ++j) {
        if (used[idx(j)]) {
          u[idx(p[idx(j)])] += delta;
          v[idx(j)] -= delta;
        } else {
          minv[idx(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[idx(j0)] != 0);
    do {
      const int j1 = way[idx(j0)];
      p[idx(j0)] = p[idx(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(idx(n), -1);
  for (int j = 1; j <= n; ++j) assignment[idx(p[idx(j)] - 1)] = j - 1;
  return assignment;
}

CuttingPlaneResult solve_cutting_plane(const Instance& instance, int k,
                                       std::optional<double> time_limit) {
  return solve_cutting_plane(NodeGraph(instance, k), time_limit);
}

CuttingPlaneResult solve_cutting_plane(const NodeGraph& g, std::optional<double> time_limit) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  const int n = g.circle_count();
  const std::vector<double> base = min_arc_matrix(g);

  struct Arc {
    int from;
    int to;
  };
  struct Node {
    double bound;
    std::int64_t id;
    std::vector<Arc> included;
    std::vector<Arc> excluded;
    std::vector<int> successor;
  };
  struct Later {
    bool operator()(const Node& a, const Node& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;
      return a.id > b.id;
    }
  };

  // Relaxation of a branch: assignment over min-slot arc costs with the
  // branch's fixed arcs, plus the subtour cuts implied by included chains.
  auto relax = [&](const std::vector<Arc>& included, const std::vector<Arc>& excluded)
      -> std::optional<std::pair<double, std::vector<int>>> {
    std::vector<double> cost = base;
    for (const Arc& a : excluded) cost[idx(a.from * n + a.to)] = kInf;
    std::vector<int> succ(idx(n), -1), pred(idx(n), -1);
    for (const Arc& a : included) {
      for (int j = 0; j < n; ++j) {
        if (j != a.to) cost[idx(a.from * n + j)] = kInf;
        if (j != a.from) cost[idx(j * n + a.to)] = kInf;
      }
      succ[idx(a.from)] = a.to;
      pred[idx(a.to)] = a.from;
    }
    // Each included chain head..tail covering fewer than n circles must not close.
    for (int head = 0; head < n; ++head) {
      if (pred[idx(head)] >= 0 || succ[idx(head)] < 0) continue;
      int tail = head;
      int length = 1;
      while (succ[idx(tail)] >= 0) {
        tail = succ[idx(tail)];
        ++length;
      }
      if (length < n) cost[idx(tail * n + head)] = kInf;
    }
    // Two-circle subtours are excluded up front for N >= 3.
    if (n >= 3) {
      for (const Arc& a : included) cost[idx(a.to * n + a.from)] = kInf;
    }
    auto assignment = solve_assignment(cost, n);
    if (!assignment) return std::nullopt;
    double value = 0;
    for (int i = 0; i < n; ++i) value += base[idx(i * n + (*assignment)[idx(i)])];
    return std::make_pair(value, std::move(*assignment));
  };

  CuttingPlaneResult result;
  DiscreteTour incumbent = solve_heuristic(g, 0);
  std::set<std::vector<int>> cut_pool;

  std::priority_queue<Node, std::vector<Node>, Later> open;
  std::int64_t next_id = 0;
  auto root = relax({}, {});
  if (!root) throw std::logic_error("cutting plane: root relaxation infeasible");
  result.root_bound = root->first;
  open.push(Node{root->first, next_id++, {}, {}, std::move(root->second)});

  auto consider = [&](const std::vector<int>& cycle_order) {
    std::vector<int> order = canonical_order(cycle_order);
    const double cost = fast_slot_cost(g, order, nullptr);
    const double tol = tie_tol(incumbent.length);
    if (cost < incumbent.length - tol ||
        (cost <= incumbent.length + tol && order < incumbent.order)) {
      incumbent = finish_tour(g, order);
    }
    return cost;
  };

  bool timed_out = false;
  while (!open.empty()) {
    if (time_limit) {
      const std::chrono::duration<double> elapsed = Clock::now() - started;
      if (elapsed.count() > *time_limit) {
        timed_out = true;
        break;
      }
    }
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent.length - tie_tol(incumbent.length)) continue;
    ++result.nodes_explored;

    const auto cycles = find_subtours(node.successor);
    std::vector<int> branch_cycle;
    if (cycles.size() == 1) {
      const double true_cost = consider(cycles.front());
      // Min-slot costs are exact for this tour: nothing cheaper in the branch.
      if (true_cost <= node.bound + tie_tol(true_cost)) continue;
      branch_cycle = cycles.front();
    } else {
      branch_cycle = *std::min_element(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
        return a.size() < b.size();
      });
      std::vector<int> members = branch_cycle;
      std::sort(members.begin(), members.end());
      cut_pool.insert(std::move(members));
    }

    // Child t forbids arc t of the cycle and keeps arcs 0..t-1.
    std::vector<Arc> arcs;
    for (std::size_t t = 0; t < branch_cycle.size(); ++t) {
      arcs.push_back({branch_cycle[t], branch_cycle[(t + 1) % branch_cycle.size()]});
    }
    std::vector<Arc> included = node.included;
    for (const Arc& arc : arcs) {
      std::vector<Arc> excluded = node.excluded;
      excluded.push_back(arc);
      if (auto child = relax(included, excluded)) {
        if (child->first < incumbent.length - tie_tol(incumbent.length)) {
          open.push(Node{child->first, next_id++, included, std::move(excluded),
                         std::move(child->second)});
        }
      }
      included.push_back(arc);
    }
  }

  result.tour = incumbent;
  result.cuts = static_cast<int>(cut_pool.size());
  result.proven_optimal = !timed_out;
  result.lower_bound = incumbent.length;
  if (timed_out && !open.empty()) result.lower_bound = std::min(incumbent.length, open.top().bound);
  return result;
}

DiscreteTour solve_heuristic(const Instance& instance, int k, std::uint64_t seed) {
  return solve_heuristic(NodeGraph(instance, k), seed);
}

DiscreteTour solve_heuristic(const NodeGraph& g, std::uint64_t seed) {
  const int n = g.circle_count();
  const std::vector<double> cost = min_arc_matrix(g);

  std::vector<int> starts(idx(n));
  std::iota(starts.begin(), starts.end(), 0);
  std::mt19937_64 rng(seed);
  // Fisher-Yates on raw engine output keeps the sequence platform independent.
  for (int i = n - 1; i > 1; --i) {
    const int j = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(i));
    std::swap(starts[idx(i)], starts[idx(j)]);
  }
  starts.resize(idx(std::min(n, 8)));

  DiscreteTour best;
  best.length = kInf;
  for (int start : starts) {
    std::vector<int> tour = nearest_neighbour(cost, n, start);
    two_opt(tour, [&](int a, int b) { return cost[idx(a * n + b)]; });
    std::vector<int> slots;
    double length = fast_slot_cost(g, tour, &slots);
    for (int round = 0; round < 50; ++round) {
      two_opt(tour, [&](int a, int b) { return g.dist(a, slots[idx(a)], b, slots[idx(b)]); });
      std::vector<int> next_slots;
      const double next = fast_slot_cost(g, tour, &next_slots);
      slots = std::move(next_slots);
      const bool improved = next < length - tie_tol(length);
      length = std::min(length, next);
      if (!improved) break;
    }
    std::vector<int> order = canonical_order(tour);
    const double tol = tie_tol(best.length);
    if (best.order.empty() || length < best.length - tol ||
        (length <= best.length + tol && order < best.order)) {
      best.order = order;
      best.length = length;
    }
  }
  return finish_tour(g, best.order);
}

double centers_tour_length(const Instance& instance, int exact_limit) {
  Instance centers = instance;
  for (Circle& c : centers.circles) c.radius = 0;
  return solve_exact_dp(centers, 1, exact_limit).length;
}

}  // namespace tspcn
