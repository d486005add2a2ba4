#include "tspcn/model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace tspcn {

using nlohmann::json;

namespace {

// 53 random mantissa bits from the engine; std::uniform_real_distribution
// is implementation-defined and would break cross-platform determinism.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

bool finite_circle(const Circle& c) {
  return std::isfinite(c.center_x) && std::isfinite(c.center_y) && std::isfinite(c.radius);
}

std::string json_string(const std::string& s) { return json(s).dump(); }

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

double number_field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  if (!it->is_number()) throw ParseError(where + "." + key + ": expected a number");
  return it->get<double>();
}

const json& array_field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing \"") + key + "\" key");
  if (!it->is_array()) throw ParseError(std::string("\"") + key + "\": expected an array");
  return *it;
}

template <typename Range, typename Fn>
std::string join(const Range& range, Fn&& render) {
  std::string out;
  bool first = true;
  for (const auto& item : range) {
    if (!first) out += ", ";
    first = false;
    out += render(item);
  }
  return out;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::ExactDp:
      return "exact-dp";
    case Method::CuttingPlane:
      return "cutting-plane";
    case Method::Heuristic:
      return "heuristic";
  }
  return "unknown";
}

std::string to_string(SectorMode m) {
  return m == SectorMode::FullDisk ? "full-disk" : "sector-box";
}

Method parse_method(const std::string& s) {
  if (s == "exact-dp") return Method::ExactDp;
  if (s == "cutting-plane") return Method::CuttingPlane;
  if (s == "heuristic") return Method::Heuristic;
  throw ValidationError("unknown method '" + s + "' (expected exact-dp, cutting-plane or heuristic)");
}

SectorMode parse_sector_mode(const std::string& s) {
  if (s == "full-disk") return SectorMode::FullDisk;
  if (s == "sector-box") return SectorMode::SectorBox;
  throw ValidationError("unknown sector mode '" + s + "' (expected full-disk or sector-box)");
}

void SolverConfig::validate() const {
  if (k < 1) throw ValidationError("k must be >= 1");
  if (exact_limit < 2) throw ValidationError("exact_limit must be >= 2");
  if (!(descent_tol > 0)) throw ValidationError("descent_tol must be > 0");
  if (descent_max_sweeps < 1) throw ValidationError("descent_max_sweeps must be >= 1");
  if (time_limit && !(*time_limit > 0)) throw ValidationError("time_limit must be > 0");
}

void validate_instance(const Instance& instance) {
  if (instance.circles.size() < 2) {
    throw ValidationError("instance needs at least 2 circles, got " +
                          std::to_string(instance.circles.size()));
  }
  for (std::size_t i = 0; i < instance.circles.size(); ++i) {
    const Circle& c = instance.circles[i];
    if (!finite_circle(c)) {
      throw ValidationError("circle " + std::to_string(i) + " has a non-finite field");
    }
    if (c.radius < 0) {
      throw ValidationError("circle " + std::to_string(i) + " has negative radius " +
                            format_number(c.radius));
    }
  }
}

Instance generate_instance(const GenerateParams& p) {
  if (p.n < 2) throw ValidationError("n must be >= 2, got " + std::to_string(p.n));
  if (!(p.radius_min >= 0) || !(p.radius_max >= p.radius_min)) {
    throw ValidationError("radius range must satisfy 0 <= min <= max");
  }
  if (!(p.center_box.xmax >= p.center_box.xmin) || !(p.center_box.ymax >= p.center_box.ymin)) {
    throw ValidationError("center box must satisfy min <= max on both axes");
  }
  if (p.min_center_gap && !(*p.min_center_gap >= 0)) {
    throw ValidationError("min_center_gap must be >= 0");
  }

  std::mt19937_64 rng(p.seed);
  Instance out;
  out.circles.reserve(static_cast<std::size_t>(p.n));
  for (int i = 0; i < p.n; ++i) {
    Circle c;
    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
      c.center_x = uniform(rng, p.center_box.xmin, p.center_box.xmax);
      c.center_y = uniform(rng, p.center_box.ymin, p.center_box.ymax);
      placed = true;
      if (p.min_center_gap) {
        for (const Circle& other : out.circles) {
          if (distance(c.center(), other.center()) < *p.min_center_gap) {
            placed = false;
            break;
          }
        }
      }
    }
    if (!placed) {
      throw GenerationError("infeasible generation parameters: could not place circle " +
                            std::to_string(i) + " after " +
                            std::to_string(kMaxPlacementAttempts) + " attempts");
    }
    c.radius = uniform(rng, p.radius_min, p.radius_max);
    out.circles.push_back(c);
  }
  return out;
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string instance_to_json(const Instance& instance) {
  std::ostringstream out;
  out << "{\n";
  if (instance.name) out << "  \"name\": " << json_string(*instance.name) << ",\n";
  out << "  \"circles\": [";
  for (std::size_t i = 0; i < instance.circles.size(); ++i) {
    const Circle& c = instance.circles[i];
    out << (i ? ",\n    " : "\n    ") << "{\"x\": " << format_number(c.center_x)
        << ", \"y\": " << format_number(c.center_y) << ", \"r\": " << format_number(c.radius)
        << "}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

Instance instance_from_json(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("instance: expected a JSON object");
  Instance out;
  if (const auto it = doc.find("name"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("name: expected a string");
    out.name = it->get<std::string>();
  }
  const json& circles = array_field(doc, "circles");
  for (std::size_t i = 0; i < circles.size(); ++i) {
    const std::string where = "circles[" + std::to_string(i) + "]";
    if (!circles[i].is_object()) throw ParseError(where + ": expected an object");
    out.circles.push_back({number_field(circles[i], "x", where), number_field(circles[i], "y", where),
                           number_field(circles[i], "r", where)});
  }
  validate_instance(out);
  return out;
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  validate_instance(instance);
  write_text_file(path, instance_to_json(instance));
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_text_file(path));
}

std::string solution_to_json(const ContinuousSolution& s, const SolutionMeta& meta,
                             const std::vector<JsonMember>& extra) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"order\": [" << join(s.order, [](int v) { return std::to_string(v); }) << "],\n";
  out << "  \"points\": ["
      << join(s.points,
              [](const Point& p) {
                return "[" + format_number(p.x) + ", " + format_number(p.y) + "]";
              })
      << "],\n";
  out << "  \"edge_lengths\": [" << join(s.edge_lengths, [](double v) { return format_number(v); })
      << "],\n";
  out << "  \"total\": " << format_number(s.total) << ",\n";
  out << "  \"method\": " << json_string(meta.method) << ",\n";
  out << "  \"k\": " << meta.k << ",\n";
  out << "  \"sector_mode\": " << json_string(meta.sector_mode);
  for (const JsonMember& m : extra) out << ",\n  " << json_string(m.key) << ": " << m.raw_value;
  out << "\n}\n";
  return out.str();
}

ContinuousSolution solution_from_json(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("solution: expected a JSON object");
  ContinuousSolution out;
  const json& order = array_field(doc, "order");
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!order[i].is_number_integer()) {
      throw ParseError("order[" + std::to_string(i) + "]: expected an integer");
    }
    out.order.push_back(order[i].get<int>());
  }
  const json& points = array_field(doc, "points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const json& p = points[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ParseError("points[" + std::to_string(i) + "]: expected [u, v]");
    }
    out.points.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  const json& edges = array_field(doc, "edge_lengths");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!edges[i].is_number()) {
      throw ParseError("edge_lengths[" + std::to_string(i) + "]: expected a number");
    }
    out.edge_lengths.push_back(edges[i].get<double>());
  }
  out.total = number_field(doc, "total", "solution");
  return out;
}

ContinuousSolution load_solution(const std::filesystem::path& path) {
  return solution_from_json(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double cyclic_length(const std::vector<Point>& points, const std::vector<int>& order) {
  double total = 0;
  const std::size_t n = order.size();
  for (std::size_t t = 0; t < n; ++t) {
    total += distance(points[static_cast<std::size_t>(order[t])],
                      points[static_cast<std::size_t>(order[(t + 1) % n])]);
  }
  return total;
}

}  // namespace tspcn
