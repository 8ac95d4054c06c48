#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swloc/graph.hpp"

namespace swloc::trace {

/// One (user, file, timestamp) access record.
struct TraceEvent {
  std::string user_id;
  std::string file_id;
  std::uint64_t timestamp = 0;  ///< seconds since epoch

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Half-open window [start, start + length).
struct WindowSpec {
  std::uint64_t start = 0;
  std::uint64_t length = 0;

  bool contains(std::uint64_t t) const noexcept { return t >= start && t - start < length; }
};

struct ParseIssue {
  std::size_t line = 0;
  std::string message;
};

struct ParseResult {
  std::vector<TraceEvent> events;
  std::vector<ParseIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
};

/// Headerless CSV `user_id,file_id,timestamp`; '#' comment lines and blank
/// lines are skipped. Bad records are collected, not thrown.
ParseResult parse_trace(std::istream& in);

/// Users active in `window` become nodes; two users are linked iff they
/// accessed a common file inside the window.
graph::UndirectedGraph build_sharing_graph(const std::vector<TraceEvent>& events, const WindowSpec& window);

struct WindowReport {
  WindowSpec window;
  std::size_t n_nodes = 0;  ///< whole graph, also set for empty windows
  std::size_t n_links = 0;
  /// Absent when the largest component has fewer than two nodes.
  std::optional<graph::SmallWorldReport> report;

  bool empty() const noexcept { return !report.has_value(); }
};

/// One report per window length (ascending), each window anchored at the
/// earliest timestamp in `events`. Throws ParameterError on empty events or
/// a zero length.
std::vector<WindowReport> windowed_reports(const std::vector<TraceEvent>& events,
                                           std::vector<std::uint64_t> window_lengths, std::size_t samples,
                                           std::uint64_t seed);

/// Synthetic clustered trace: users split into groups that mostly access
/// their own group's files, with an occasional cross-group access.
struct SyntheticTraceSpec {
  std::size_t groups = 20;
  std::size_t users_per_group = 12;
  std::size_t files_per_group = 40;
  std::size_t accesses_per_user = 30;
  double cross_group_probability = 0.02;
  std::uint64_t duration_seconds = 30 * 86400;
  std::uint64_t start = 1009843200;  // 2002-01-01T00:00:00Z
  std::uint64_t seed = 2002;
};

std::vector<TraceEvent> synthetic_clustered_trace(const SyntheticTraceSpec& spec);

}  // namespace swloc::trace
