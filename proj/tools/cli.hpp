#pragma once

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "horoball/horoball.hpp"

namespace horoball::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kTooFewIterations = 3,
  kSpaceMismatch = 4,
  kNoFeasibleBall = 5,
  kIoError = 6,
};

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::NegativeRadius:
    case ErrorCode::EmptySet: return kParseError;
    case ErrorCode::TooFewIterations: return kTooFewIterations;
    case ErrorCode::SpaceMismatch:
    case ErrorCode::InvalidPoint:
    case ErrorCode::NotOnComplex: return kSpaceMismatch;
    default: return kFailure;
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Whole file is written at once so a failure never leaves a partial CSV.
inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path);
  out << contents;
  out.flush();
  if (!out) throw IoFailure("write failed for " + path);
}

inline std::string csv_quote(const std::string& field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string history_csv(const SolverRun& run) {
  std::ostringstream out;
  out << "iteration,value,point\r\n";
  for (std::size_t i = 0; i < run.history.size(); ++i)
    out << (i + 1) << ',' << experiment::format_number(run.history[i].value) << ','
        << csv_quote(io::to_json(run.history[i].iterate).dump()) << "\r\n";
  return out.str();
}

/// Grid spacing giving roughly `budget` grid points over the covering region.
inline double auto_grid_spacing(const DistanceEnvelope& f, double budget = 2e6) {
  const auto grid = reference::covering_grid(f, 1.0);
  double h = 0.0;
  switch (f.space().kind()) {
    case Space::Kind::Euclidean: {
      const auto& box = std::get<reference::EuclideanBox>(grid.region);
      double volume = 1.0, widest = 0.0;
      for (std::size_t i = 0; i < box.lo.size(); ++i) widest = std::max(widest, box.hi[i] - box.lo[i]);
      const double floor_width = std::max(widest * 1e-3, 1e-9);
      for (std::size_t i = 0; i < box.lo.size(); ++i) volume *= std::max(box.hi[i] - box.lo[i], floor_width);
      h = std::pow(volume / budget, 1.0 / static_cast<double>(box.lo.size()));
      break;
    }
    case Space::Kind::Spider:
      h = std::get<reference::SpiderExtent>(grid.region).max_offset * f.space().legs() / budget;
      break;
    case Space::Kind::OrthantCycle:
      h = std::get<reference::OrthantExtent>(grid.region).max_radius * std::sqrt(f.space().quadrants() / budget);
      break;
  }
  return h > 0.0 ? h : 1e-3;
}

inline io::json point_report(const Space& space, const Point& p) {
  io::json j = io::to_json(p);
  if (space.kind() == Space::Kind::OrthantCycle && space.quadrants() == 5) j["model3d"] = to_model_r3(space, p);
  return j;
}

inline double diameter_of(const Space& space, std::span<const Point> points) {
  double mu = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) mu = std::max(mu, distance(space, points[i], points[j]));
  return mu;
}

struct CircumcenterArgs {
  std::string input;
  int iterations = 0;
  std::string history;
  bool verify = false;
  double grid_h = 0.0;
};

inline int cmd_circumcenter(const CircumcenterArgs& args, std::ostream& out) {
  const io::Instance inst = io::parse_instance(read_file(args.input));
  if (inst.points.empty()) throw Error(ErrorCode::ParseError, "points: need at least one point");
  const SolverRun run = circumcenter(inst.space, inst.points, args.iterations, !args.history.empty());

  io::json report;
  report["space"] = io::to_json(inst.space);
  report["center"] = point_report(inst.space, run.best_point);
  report["radius"] = run.best_value;
  report["iterations"] = args.iterations;
  report["distance_calls"] = run.distance_calls;
  report["combination_calls"] = run.combination_calls;
  const double mu = diameter_of(inst.space, inst.points);
  const double bound = 2.0 * mu / std::sqrt(static_cast<double>(args.iterations));
  report["diameter"] = mu;
  report["error_bound"] = bound;

  if (args.verify) {
    const DistanceEnvelope f = make_circumcenter(inst.space, inst.points);
    const double h = args.grid_h > 0.0 ? args.grid_h : auto_grid_spacing(f);
    const auto bf = reference::brute_force_minimize(f, reference::covering_grid(f, h));
    report["verify"] = {{"grid_h", h},
                        {"grid_value", bf.value},
                        {"grid_error_bound", bf.error_bound},
                        {"grid_point", point_report(inst.space, bf.point)},
                        {"agrees", std::abs(run.best_value - bf.value) <= bound + bf.error_bound}};
  }
  // History goes out only after everything else has succeeded.
  if (!args.history.empty()) write_file(args.history, history_csv(run));
  out << report.dump(2) << '\n';
  return kOk;
}

struct MinimizeArgs {
  std::string input;
  int iterations = 0;
  bool force_circumcenter = false;
  bool force_balls = false;
  std::string history;
  bool verify = false;
  double grid_h = 0.0;
};

inline int cmd_minimize(const MinimizeArgs& args, std::ostream& out, std::ostream& err) {
  const io::Instance inst = io::parse_instance(read_file(args.input));
  if (!inst.feasible_ball) {
    err << "error: minimize needs a \"feasible_ball\" in the instance file\n";
    return kNoFeasibleBall;
  }
  io::ObjectiveKind kind = inst.objective_kind;
  if (args.force_circumcenter) kind = io::ObjectiveKind::Circumcenter;
  if (args.force_balls) kind = io::ObjectiveKind::Balls;
  const DistanceEnvelope f = inst.objective(kind);

  SolverConfig cfg;
  cfg.iterations = args.iterations;
  cfg.record_history = !args.history.empty();
  const SolverRun run = subgradient_minimize(f, *inst.feasible_ball, cfg);
  const double L = f.lipschitz_bound();
  const double bound = L * run.diameter / std::sqrt(static_cast<double>(args.iterations));

  io::json report;
  report["space"] = io::to_json(inst.space);
  report["best_point"] = point_report(inst.space, run.best_point);
  report["best_value"] = run.best_value;
  report["mean_value"] = run.mean_value;
  report["iterations_done"] = run.iterations_done;
  report["stopped_early"] = run.stopped_early;
  report["step_length"] = run.step_length;
  report["lipschitz"] = L;
  report["diameter"] = run.diameter;
  report["mean_gap_bound"] = bound;
  if (kind == io::ObjectiveKind::Balls) {
    // best <= 0 certifies a common point; mean - bound > 0 certifies none.
    std::string verdict = "inconclusive";
    if (run.best_value <= 0.0)
      verdict = "feasible";
    else if (run.mean_value - bound > 0.0)
      verdict = "infeasible";
    report["verdict"] = verdict;
  }
  if (args.verify) {
    const double h = args.grid_h > 0.0 ? args.grid_h : auto_grid_spacing(f);
    const auto bf = reference::brute_force_minimize(f, reference::covering_grid(f, h));
    const double lower = bf.value - bf.error_bound;
    report["verify"] = {{"grid_h", h},
                        {"grid_value", bf.value},
                        {"grid_error_bound", bf.error_bound},
                        {"mean_gap_upper", run.mean_value - lower},
                        {"bound_satisfied", run.mean_value - lower <= bound}};
  }
  if (!args.history.empty()) write_file(args.history, history_csv(run));
  out << report.dump(2) << '\n';
  return kOk;
}

struct ExperimentArgs {
  int max_exponent = 6;
  std::string output;
  bool allow_large = false;
};

inline int cmd_experiment_figure1(const ExperimentArgs& args, std::ostream& out, std::ostream& err) {
  if (args.max_exponent > 6 && !args.allow_large) {
    err << "error: --max-exp above 6 needs --allow-large\n";
    return kFailure;
  }
  const auto report = experiment::run_figure1(args.max_exponent);
  std::ostringstream csv;
  experiment::write_csv(report, csv);
  write_file(args.output, csv.str());
  out << "rows: " << report.rows.size() << '\n';
  out << "slope: " << experiment::format_number(experiment::decade_slope(report)) << '\n';
  return kOk;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Horospherical subgradient method in Hadamard spaces", "horoball"};
  app.require_subcommand(1);

  CircumcenterArgs cc;
  auto* circ = app.add_subcommand("circumcenter", "Approximate the circumcenter of the instance points");
  circ->add_option("--input", cc.input, "Instance JSON file")->required();
  circ->add_option("--iters", cc.iterations, "Iteration count (>= 16)")->required();
  circ->add_option("--history", cc.history, "Write per-iteration CSV here");
  circ->add_flag("--verify", cc.verify, "Cross-check against a brute-force grid");
  circ->add_option("--grid-h", cc.grid_h, "Grid spacing for --verify");

  MinimizeArgs mn;
  auto* mini = app.add_subcommand("minimize", "Projected subgradient method over the feasible ball");
  mini->add_option("--input", mn.input, "Instance JSON file")->required();
  mini->add_option("--iters", mn.iterations, "Iteration count")->required();
  auto* fc = mini->add_flag("--circumcenter", mn.force_circumcenter, "Use the circumcenter objective of the points");
  auto* fb = mini->add_flag("--balls", mn.force_balls, "Use the intersecting-balls objective (needs radii)");
  fc->excludes(fb);
  mini->add_option("--history", mn.history, "Write per-iteration CSV here");
  mini->add_flag("--verify", mn.verify, "Cross-check the bound against a brute-force grid");
  mini->add_option("--grid-h", mn.grid_h, "Grid spacing for --verify");

  ExperimentArgs ex;
  auto* exp = app.add_subcommand("experiment", "Reproducible experiments");
  exp->require_subcommand(1);
  auto* fig = exp->add_subcommand("figure1", "Best gap per decade of N on the five-quadrant instance");
  fig->add_option("--max-exp", ex.max_exponent, "Largest decade exponent")->check(CLI::Range(1, 8));
  fig->add_option("--output", ex.output, "CSV output path")->required();
  fig->add_flag("--allow-large", ex.allow_large, "Permit N = 10^7 and 10^8");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    const int code = app.exit(e, help, err);
    out << help.str();
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*circ) return cmd_circumcenter(cc, out);
    if (*mini) return cmd_minimize(mn, out, err);
    if (*fig) return cmd_experiment_figure1(ex, out, err);
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kFailure;
}

}  // namespace horoball::cli
