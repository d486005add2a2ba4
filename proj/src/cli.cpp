#include "tspcn/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tspcn/pipeline.hpp"
#include "tspcn/render.hpp"

namespace tspcn::cli {

namespace {

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v)) {
      throw CLI::ValidationError(what, "'" + text + "' is not a comma separated list of numbers");
    }
    values.push_back(v);
  }
  if (values.size() != expected) {
    throw CLI::ValidationError(what, "expected " + std::to_string(expected) + " values, got '" +
                                         text + "'");
  }
  return values;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s(buf);
  if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

struct GenerateArgs {
  int n{0};
  std::string box{"0,0,100,100"};
  std::string radius{"1,5"};
  std::uint64_t seed{0};
  std::optional<double> gap;
  std::string name;
  std::string out;
};

struct SolveArgs {
  std::string instance;
  std::string method{"exact-dp"};
  std::string sector{"full-disk"};
  int k{4};
  int exact_limit{16};
  std::uint64_t seed{0};
  std::optional<double> time_limit;
  double descent_tol{1e-10};
  int max_sweeps{10000};
  std::string out;
  std::string plot;
  bool no_timings{false};
};

struct ValidateArgs {
  std::string instance;
  std::string solution;
  double tol{1e-9};
};

struct RenderArgs {
  std::string instance;
  std::string solution;
  std::string out;
  int canvas{800};
  double margin{0.05};
  bool no_labels{false};
};

struct BenchArgs {
  std::vector<int> sizes{12, 20, 40, 75};
  int seeds{3};
  int k{4};
  std::string sector{"full-disk"};
  int exact_limit{16};
  double time_limit{60};
  bool csv{false};
};

SolverConfig make_config(const SolveArgs& a) {
  SolverConfig config;
  config.k = a.k;
  config.method = parse_method(a.method);
  config.sector_mode = parse_sector_mode(a.sector);
  config.exact_limit = a.exact_limit;
  config.seed = a.seed;
  config.time_limit = a.time_limit;
  config.descent_tol = a.descent_tol;
  config.descent_max_sweeps = a.max_sweeps;
  config.validate();
  return config;
}

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  const auto box = parse_list(a.box, 4, "--box");
  const auto radius = parse_list(a.radius, 2, "--radius");
  GenerateParams params;
  params.n = a.n;
  params.center_box = {box[0], box[1], box[2], box[3]};
  params.radius_min = radius[0];
  params.radius_max = radius[1];
  params.seed = a.seed;
  params.min_center_gap = a.gap;
  try {
    Instance instance = generate_instance(params);
    if (!a.name.empty()) instance.name = a.name;
    if (a.out.empty()) {
      out << instance_to_json(instance);
    } else {
      save_instance(instance, a.out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  SolveReport report;
  Instance instance;
  try {
    const SolverConfig config = make_config(a);
    instance = load_instance(a.instance);
    report = solve_two_phase(instance, config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  const std::string json = report_to_json(report, !a.no_timings);
  try {
    if (a.out.empty()) {
      out << json;
    } else {
      write_text_file(a.out, json);
    }
    if (!a.plot.empty()) write_text_file(a.plot, render_svg(instance, report.solution));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (report.time_limited) {
    err << "time limit reached: discrete tour not proven optimal (bound "
        << format_number(report.phase1.length) << ")\n";
    return kTimeLimited;
  }
  return kOk;
}

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  Instance instance;
  ContinuousSolution solution;
  try {
    instance = load_instance(a.instance);
    solution = load_solution(a.solution);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (solution.points.size() != instance.circles.size()) {
    err << "error: instance has " << instance.circles.size() << " circles but the solution has "
        << solution.points.size() << " points\n";
    return kInputError;
  }
  const ValidationReport report = validate_solution(instance, solution, a.tol);
  out << report.to_text();
  return report.passed ? kOk : kValidationFailed;
}

int cmd_render(const RenderArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const Instance instance = load_instance(a.instance);
    const ContinuousSolution solution = load_solution(a.solution);
    RenderStyle style;
    style.canvas_px = a.canvas;
    style.margin_frac = a.margin;
    style.labels = !a.no_labels;
    const std::string svg = render_svg(instance, solution, style);
    if (a.out.empty()) {
      out << svg;
    } else {
      write_text_file(a.out, svg);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

struct BenchRow {
  int size{0};
  int seed{0};
  SolverConfig config;
  SolveReport report;
  bool valid{false};
  double wall{0};
  std::string error;
};

Method bench_method(int n, const BenchArgs& a) {
  if (n <= a.exact_limit) return Method::ExactDp;
  if (n <= 25) return Method::CuttingPlane;
  return Method::Heuristic;
}

// Instances for the bench suite: box side grows with sqrt(N) so density
// stays roughly constant.
Instance bench_instance(int n, int seed) {
  GenerateParams p;
  p.n = n;
  const double side = std::round(100.0 * std::sqrt(n / 12.0));
  p.center_box = {0, 0, side, side};
  p.radius_min = 2;
  p.radius_max = 6;
  p.seed = static_cast<std::uint64_t>(seed);
  Instance instance = generate_instance(p);
  instance.name = "bench-n" + std::to_string(n) + "-s" + std::to_string(seed);
  return instance;
}

BenchRow run_bench_row(int size, int seed, const BenchArgs& a) {
  BenchRow row;
  row.size = size;
  row.seed = seed;
  row.config.k = a.k;
  row.config.method = bench_method(size, a);
  row.config.sector_mode = parse_sector_mode(a.sector);
  row.config.exact_limit = a.exact_limit;
  row.config.seed = static_cast<std::uint64_t>(seed);
  if (row.config.method == Method::CuttingPlane) row.config.time_limit = a.time_limit;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Instance instance = bench_instance(size, seed);
    row.report = solve_two_phase(instance, row.config);
    row.valid = validate_solution(instance, row.report.solution).passed;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  row.wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string gap_text(const BenchRow& row) {
  if (!row.report.lower_bound_available) return "NA";
  const double total = row.report.solution.total;
  const double gap = total > 0 ? (total - row.report.lower_bound) / total : 0.0;
  return fixed(gap, 6);
}

int worker_count() {
  if (const char* env = std::getenv("TSPCN_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<int, int>> jobs;
  for (int size : a.sizes) {
    for (int seed = 1; seed <= a.seeds; ++seed) jobs.emplace_back(size, seed);
  }
  // Runs are independent; output is collected in job order.
  std::vector<BenchRow> rows(jobs.size());
  const std::size_t workers = static_cast<std::size_t>(worker_count());
  for (std::size_t begin = 0; begin < jobs.size(); begin += workers) {
    std::vector<std::future<BenchRow>> batch;
    for (std::size_t j = begin; j < std::min(jobs.size(), begin + workers); ++j) {
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                 run_bench_row, jobs[j].first, jobs[j].second, std::cref(a)));
    }
    for (std::size_t j = 0; j < batch.size(); ++j) rows[begin + j] = batch[j].get();
  }

  int status = kOk;
  if (a.csv) {
    out << "size,seed,method,k,sector_mode,exact_limit,time_limit,descent_tol,length,"
           "phase1_length,lower_bound,gap,proven_optimal_discrete,valid,wall_seconds\n";
  } else {
    out << std::left << std::setw(6) << "size" << std::setw(6) << "seed" << std::setw(15)
        << "method" << std::setw(16) << "length" << std::setw(16) << "phase1" << std::setw(16)
        << "lower_bound" << std::setw(10) << "gap" << std::setw(8) << "proven" << std::setw(7)
        << "valid"
        << "wall_s\n";
  }
  for (const BenchRow& row : rows) {
    if (!row.error.empty()) {
      err << "size " << row.size << " seed " << row.seed << ": " << row.error << "\n";
      status = kInputError;
      continue;
    }
    const SolveReport& r = row.report;
    const std::string lb = r.lower_bound_available ? fixed(r.lower_bound, 6) : "NA";
    if (a.csv) {
      out << row.size << "," << row.seed << "," << to_string(row.config.method) << ","
          << row.config.k << "," << to_string(row.config.sector_mode) << ","
          << row.config.exact_limit << ","
          << (row.config.time_limit ? format_number(*row.config.time_limit) : "") << ","
          << format_number(row.config.descent_tol) << "," << fixed(r.solution.total, 6) << ","
          << fixed(r.phase1.length, 6) << "," << lb << "," << gap_text(row) << ","
          << (r.proven_optimal_discrete ? "true" : "false") << ","
          << (row.valid ? "true" : "false") << "," << fixed(row.wall, 3) << "\n";
    } else {
      out << std::left << std::setw(6) << row.size << std::setw(6) << row.seed << std::setw(15)
          << to_string(row.config.method) << std::setw(16) << fixed(r.solution.total, 6)
          << std::setw(16) << fixed(r.phase1.length, 6) << std::setw(16) << lb << std::setw(10)
          << gap_text(row) << std::setw(8) << (r.proven_optimal_discrete ? "yes" : "no")
          << std::setw(7) << (row.valid ? "yes" : "no") << fixed(row.wall, 3) << "\n";
    }
    if (!row.valid) status = kValidationFailed;
  }
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traveling salesman with circle neighborhoods: two-phase solver", "tspcn"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a random instance");
  generate->add_option("--n", gen.n, "Number of circles")->required()->check(CLI::Range(2, 1000000));
  generate->add_option("--box", gen.box, "Center box xmin,ymin,xmax,ymax")->capture_default_str();
  generate->add_option("--radius", gen.radius, "Radius range min,max")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--gap", gen.gap, "Minimum distance between centers");
  generate->add_option("--name", gen.name, "Instance name");
  generate->add_option("--out", gen.out, "Output file (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance with the two-phase method");
  solve_cmd->add_option("instance", solve.instance, "Instance JSON")->required();
  solve_cmd->add_option("--method", solve.method, "exact-dp | cutting-plane | heuristic")
      ->check(CLI::IsMember({"exact-dp", "cutting-plane", "heuristic"}))
      ->capture_default_str();
  solve_cmd->add_option("--sector", solve.sector, "full-disk | sector-box")
      ->check(CLI::IsMember({"full-disk", "sector-box"}))
      ->capture_default_str();
  solve_cmd->add_option("--k", solve.k, "Slots per circle")->check(CLI::PositiveNumber)->capture_default_str();
  solve_cmd->add_option("--exact-limit", solve.exact_limit, "Largest N for the exact program")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "Heuristic seed")->capture_default_str();
  solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds for the cutting-plane search")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--descent-tol", solve.descent_tol, "Relative improvement per sweep to stop")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve_cmd->add_option("--max-sweeps", solve.max_sweeps, "Descent sweep cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "Solution file (default stdout)");
  solve_cmd->add_option("--plot", solve.plot, "Also write an SVG drawing");
  solve_cmd->add_flag("--no-timings", solve.no_timings, "Omit wall-clock timings from the output");

  ValidateArgs val;
  auto* validate = app.add_subcommand("validate", "Check a solution against an instance");
  validate->add_option("instance", val.instance, "Instance JSON")->required();
  validate->add_option("solution", val.solution, "Solution JSON")->required();
  validate->add_option("--tol", val.tol, "Tolerance")->check(CLI::NonNegativeNumber)->capture_default_str();

  RenderArgs ren;
  auto* render = app.add_subcommand("render", "Draw a solution as SVG");
  render->add_option("instance", ren.instance, "Instance JSON")->required();
  render->add_option("solution", ren.solution, "Solution JSON")->required();
  render->add_option("--out", ren.out, "SVG file (default stdout)");
  render->add_option("--canvas", ren.canvas, "Canvas size in pixels")->check(CLI::PositiveNumber)->capture_default_str();
  render->add_option("--margin", ren.margin, "Margin fraction")->check(CLI::Range(0.0, 0.4999))->capture_default_str();
  render->add_flag("--no-labels", ren.no_labels, "Omit circle indices");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run seeded benchmark suites");
  bench_cmd->add_option("--sizes", bench.sizes, "Instance sizes")->delimiter(',')->check(CLI::Range(2, 1000))->capture_default_str();
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds per size")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--k", bench.k, "Slots per circle")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--sector", bench.sector, "full-disk | sector-box")
      ->check(CLI::IsMember({"full-disk", "sector-box"}))
      ->capture_default_str();
  bench_cmd->add_option("--exact-limit", bench.exact_limit, "Largest N for the exact program")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  bench_cmd->add_option("--time-limit", bench.time_limit, "Cutting-plane seconds per run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_flag("--csv", bench.csv, "CSV output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (generate->parsed()) {
      // Lists are checked here so malformed values count as usage errors.
      parse_list(gen.box, 4, "--box");
      parse_list(gen.radius, 2, "--radius");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  if (generate->parsed()) return cmd_generate(gen, out, err);
  if (solve_cmd->parsed()) return cmd_solve(solve, out, err);
  if (validate->parsed()) return cmd_validate(val, out, err);
  if (render->parsed()) return cmd_render(ren, out, err);
  if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
  return kUsageError;
}

}  // namespace tspcn::cli
