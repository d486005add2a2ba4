#pragma once

#include <string>
#include <vector>

#include "tspcn/continuous.hpp"
#include "tspcn/discrete.hpp"
#include "tspcn/model.hpp"

namespace tspcn {

struct Timings {
  double phase1_seconds{0};
  double phase2_seconds{0};
  double lower_bound_seconds{0};
};

struct SolveReport {
  ContinuousSolution solution;
  DiscreteTour phase1;
  double lower_bound{0};
  /// False when N exceeded exact_limit and the bound was skipped (value 0).
  bool lower_bound_available{false};
  bool proven_optimal_discrete{false};
  /// The cutting-plane search hit time_limit; phase1 is the best incumbent.
  bool time_limited{false};
  int cuts{0};
  Timings timings;
  SolverConfig config;
};

/// Discrete tour first, then fixed-order point refinement.
SolveReport solve_two_phase(const Instance& instance, const SolverConfig& config);

struct Sequence {
  std::vector<int> order;
  /// successor[i] is the circle visited right after circle i.
  std::vector<int> successor;
  std::vector<int> slots;
};

Sequence extract_sequence(const DiscreteTour& tour);

struct ConstraintCheck {
  std::string family;  // short id, e.g. "disk"
  std::string label;   // human readable, names the constraint
  bool passed{true};
  double max_residual{0};
  std::vector<std::string> violations;
};

struct ValidationReport {
  std::vector<ConstraintCheck> checks;
  double recomputed_total{0};
  bool passed{true};

  const ConstraintCheck* find(const std::string& family) const;
  std::string to_text() const;
};

/// Checks a solution against the original continuous model. Never throws on
/// violations; they are reported per constraint family.
ValidationReport validate_solution(const Instance& instance, const ContinuousSolution& solution,
                                   double tolerance = 1e-9);

struct LowerBound {
  double value{0};
  bool available{false};
};

/// max(0, centers tour - 2 * sum of radii); skipped above exact_limit.
LowerBound lower_bound(const Instance& instance, int exact_limit = 16);

/// Solution file plus report members. Timings vary run to run; leave them
/// out when byte-identical output matters.
std::string report_to_json(const SolveReport& report, bool include_timings);
std::string report_to_json(const SolveReport& report);

}  // namespace tspcn
