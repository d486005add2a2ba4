#pragma once

#include <cstdint>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tspcn {

struct Point {
  double x{0};
  double y{0};

  friend bool operator==(const Point&, const Point&) = default;
};

/// Disk neighborhood. A zero radius degenerates to an ordinary TSP city.
struct Circle {
  double center_x{0};
  double center_y{0};
  double radius{0};

  Point center() const { return {center_x, center_y}; }

  friend bool operator==(const Circle&, const Circle&) = default;
};

/// Problem input. Circle 0 is the tour anchor.
struct Instance {
  std::vector<Circle> circles;
  std::optional<std::string> name;

  std::size_t size() const { return circles.size(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Phase-1 result: visiting order plus one discretization slot per circle.
/// slots is indexed by circle, not by tour position.
struct DiscreteTour {
  std::vector<int> order;
  std::vector<int> slots;
  int k{4};
  double length{0};

  friend bool operator==(const DiscreteTour&, const DiscreteTour&) = default;
};

/// Final answer. points is indexed by circle; edge_lengths[t] is the edge
/// from order[t] to order[(t + 1) % N].
struct ContinuousSolution {
  std::vector<int> order;
  std::vector<Point> points;
  std::vector<double> edge_lengths;
  double total{0};

  friend bool operator==(const ContinuousSolution&, const ContinuousSolution&) = default;
};

enum class Method { ExactDp, CuttingPlane, Heuristic };
enum class SectorMode { FullDisk, SectorBox };

struct SolverConfig {
  int k{4};
  Method method{Method::ExactDp};
  SectorMode sector_mode{SectorMode::FullDisk};
  int exact_limit{16};
  double descent_tol{1e-10};
  int descent_max_sweeps{10000};
  std::uint64_t seed{0};
  std::optional<double> time_limit;

  void validate() const;
};

std::string to_string(Method m);
std::string to_string(SectorMode m);
Method parse_method(const std::string& s);
SectorMode parse_sector_mode(const std::string& s);

/// Input failed a semantic check (negative radius, N < 2, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed file contents. The message names the line or field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejection sampling ran out of attempts.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ValidationError if the instance is unusable.
void validate_instance(const Instance& instance);

struct Box2 {
  double xmin{0};
  double ymin{0};
  double xmax{0};
  double ymax{0};
};

struct GenerateParams {
  int n{2};
  Box2 center_box{0, 0, 100, 100};
  double radius_min{0};
  double radius_max{0};
  std::uint64_t seed{0};
  std::optional<double> min_center_gap;
};

inline constexpr int kMaxPlacementAttempts = 10000;

/// Centers uniform in the box, radii uniform in range. The sampler only
/// uses raw mt19937_64 output, so results are identical across platforms.
Instance generate_instance(const GenerateParams& params);

std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

/// Decimal rendering with 17 significant digits; parses back to the same double.
std::string format_number(double value);

struct SolutionMeta {
  std::string method;
  int k{4};
  std::string sector_mode;
};

/// Pre-rendered JSON member appended after the standard solution members.
struct JsonMember {
  std::string key;
  std::string raw_value;
};

std::string solution_to_json(const ContinuousSolution& solution, const SolutionMeta& meta,
                             const std::vector<JsonMember>& extra = {});
/// Reads the solution members; unknown members are ignored.
ContinuousSolution solution_from_json(const std::string& text);
ContinuousSolution load_solution(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Euclidean length of the closed tour through points in the given order.
double cyclic_length(const std::vector<Point>& points, const std::vector<int>& order);

double distance(const Point& a, const Point& b);

}  // namespace tspcn
