#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "horoball/error.hpp"
#include "horoball/model.hpp"
#include "horoball/solver.hpp"

namespace horoball::experiment {

struct ExperimentRow {
  long long iterations = 0;
  double f_best = 0.0;
  double gap = 0.0;
  double log10_gap = 0.0;
  double wall_time_ms = 0.0;
};

struct ExperimentReport {
  double circumradius = 0.0;
  double diameter = 0.0;
  std::vector<ExperimentRow> rows;  // ascending iteration count
};

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Thread cap from HOROBALL_THREADS, else the hardware concurrency.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("HOROBALL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs the circumcenter iteration on `points` for N = 10^1 .. 10^max_exponent
/// and checks every row against the 2 diam / sqrt(N) guarantee.
inline ExperimentReport run_decades(const Space& space, std::span<const Point> points, double circumradius,
                                    double diameter, int max_exponent, unsigned threads = thread_budget()) {
  if (max_exponent < 1 || max_exponent > 8)
    throw Error(ErrorCode::InvalidConfig, "max exponent must lie in [1, 8]");
  ExperimentReport report{circumradius, diameter, std::vector<ExperimentRow>(static_cast<std::size_t>(max_exponent))};

  auto run_row = [&](int e) {
    const long long n = static_cast<long long>(std::llround(std::pow(10.0, e)));
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Point> canonical;
    for (const auto& p : points) canonical.push_back(canonicalize(space, p));
    const SolverRun run = horoball::detail::circumcenter_iterate(Geodesics{space}, canonical, static_cast<int>(n), false);
    const auto t1 = std::chrono::steady_clock::now();
    ExperimentRow row;
    row.iterations = n;
    row.f_best = run.best_value;
    row.gap = run.best_value - circumradius;
    row.log10_gap = std::log10(row.gap);
    row.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return row;
  };

  std::mutex error_mutex;
  std::optional<Error> first_error;
  std::vector<int> exponents;
  // Largest N first so the long rows start early.
  for (int e = max_exponent; e >= 1; --e) exponents.push_back(e);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(exponents.size())));
  std::size_t next = 0;
  std::mutex next_mutex;
  auto worker = [&](unsigned) {
    for (;;) {
      int e;
      {
        std::lock_guard lock(next_mutex);
        if (next == exponents.size()) return;
        e = exponents[next++];
      }
      try {
        report.rows[static_cast<std::size_t>(e - 1)] = run_row(e);
      } catch (const Error& err) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = err;
      }
    }
  };
  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
  }
  if (first_error) throw *first_error;

  for (const auto& row : report.rows) {
    const double bound = 2.0 * diameter / std::sqrt(static_cast<double>(row.iterations));
    if (row.gap > bound)
      throw Error(ErrorCode::InvariantViolated, "N = " + std::to_string(row.iterations) + ": gap " +
                                                    format_number(row.gap) + " exceeds bound " + format_number(bound));
  }
  return report;
}

/// The five-quadrant instance: circumcenter at the apex, circumradius
/// sqrt(5), diameter sqrt(10 + 4 sqrt(5)).
inline ExperimentReport run_figure1(int max_exponent, unsigned threads = thread_budget()) {
  const auto points = five_orthant_example();
  return run_decades(five_orthant_space(), points, std::sqrt(5.0), std::sqrt(10.0 + 4.0 * std::sqrt(5.0)),
                     max_exponent, threads);
}

inline void write_csv(const ExperimentReport& report, std::ostream& out) {
  out << "N,f_best,gap,log10_gap,wall_time_ms\r\n";
  for (const auto& row : report.rows)
    out << row.iterations << ',' << format_number(row.f_best) << ',' << format_number(row.gap) << ','
        << format_number(row.log10_gap) << ',' << format_number(row.wall_time_ms) << "\r\n";
}

/// Ordinary least-squares slope of log10(gap) against log10(N).
inline double decade_slope(const ExperimentReport& report) {
  const auto n = static_cast<double>(report.rows.size());
  if (n < 2) return std::nan("");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& row : report.rows) {
    const double x = std::log10(static_cast<double>(row.iterations));
    sx += x;
    sy += row.log10_gap;
    sxx += x * x;
    sxy += x * row.log10_gap;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace horoball::experiment
