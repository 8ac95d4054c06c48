#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace swloc::cli {

inline constexpr std::uint64_t kDefaultSeed = 2002;

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kUsageError = 2 };

/// "1d,12h,30s" -> seconds. A bare number means seconds. Throws ParameterError.
std::vector<std::uint64_t> parse_durations(const std::string& list);
/// Largest whole unit: 86400 -> "1d", 7200 -> "2h", 90 -> "90s".
std::string format_duration(std::uint64_t seconds);
/// "0.5,1,1.5" -> doubles. Throws ParameterError.
std::vector<double> parse_number_list(const std::string& list);

struct AnalyzeTraceOptions {
  std::string trace;
  std::string windows = "1d,2d,7d,14d,30d";
  std::size_t samples = 16;
  std::uint64_t seed = kDefaultSeed;
  std::string out = "trace_report.json";
};
int cmd_analyze_trace(const AnalyzeTraceOptions& opt, std::ostream& out, std::ostream& err);

struct EstimateOptions {
  double files = 1e7;
  double nodes = 1e3;
  double fp = 0.001;
  double lifetime_days = 10.0;
  double fanout = 1.2;
  double period_secs = 1.0;
  std::optional<double> bytes_per_entry;  ///< defaults to the sized filter's
};

struct EstimateReport {
  std::uint64_t m = 0;
  std::uint32_t k = 0;
  double bits_per_entry = 0.0;
  double memory_bytes = 0.0;
  double expected_fp = 0.0;
  double traffic_bytes_per_sec = 0.0;
  bool minimal_filter = false;  ///< target fp >= 1, sizing skipped
};

/// Throws ParameterError on non-positive inputs.
EstimateReport compute_estimate(const EstimateOptions& opt);
int cmd_estimate(const EstimateOptions& opt, std::ostream& out, std::ostream& err);

struct WorkloadCurveOptions {
  std::string alphas = "0.5,0.8,1,1.2";
  std::uint64_t files = 1'000'000;
  std::string coverage_grid = "0,0.001,0.002,0.005,0.01,0.02,0.05,0.1,0.2,0.5,1";
  std::string out;  ///< empty: standard output
};
int cmd_workload_curve(const WorkloadCurveOptions& opt, std::ostream& out, std::ostream& err);

struct BuildOverlayOptions {
  std::size_t clusters = 10;
  std::size_t size = 50;
  std::size_t degree = 6;
  std::string wiring = "random";
  double param = 2.0;
  std::size_t gateways = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string out = "overlay.edges";
};
int cmd_build_overlay(const BuildOverlayOptions& opt, std::ostream& out, std::ostream& err);

struct SimulateOptions {
  std::string config;
  std::string out = "sim_metrics.json";
  std::string per_round;  ///< optional CSV path
};
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to one subcommand.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace swloc::cli
