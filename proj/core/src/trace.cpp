#include "swloc/trace.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <set>
#include <string_view>

#include "swloc/error.hpp"
#include "swloc/random.hpp"

namespace swloc::trace {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

ParseResult parse_trace(std::istream& in) {
  ParseResult result;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t from = 0;
    for (;;) {
      const auto comma = view.find(',', from);
      fields.push_back(trim(view.substr(from, comma == std::string_view::npos ? comma : comma - from)));
      if (comma == std::string_view::npos) break;
      from = comma + 1;
    }
    if (fields.size() != 3) {
      result.issues.push_back({lineno, "expected 3 fields (user_id,file_id,timestamp), got " +
                                           std::to_string(fields.size())});
      continue;
    }
    if (fields[0].empty() || fields[1].empty()) {
      result.issues.push_back({lineno, "empty user or file id"});
      continue;
    }
    std::uint64_t ts = 0;
    const auto ts_field = fields[2];
    auto [ptr, ec] = std::from_chars(ts_field.data(), ts_field.data() + ts_field.size(), ts);
    if (ts_field.empty() || ec != std::errc{} || ptr != ts_field.data() + ts_field.size()) {
      result.issues.push_back({lineno, "timestamp is not a non-negative integer: '" + std::string(ts_field) + "'"});
      continue;
    }
    result.events.push_back({std::string(fields[0]), std::string(fields[1]), ts});
  }
  return result;
}

graph::UndirectedGraph build_sharing_graph(const std::vector<TraceEvent>& events, const WindowSpec& window) {
  // Ordered containers make the result independent of event order.
  std::set<std::string_view> users;
  std::map<std::string_view, std::set<std::string_view>> readers;
  for (const auto& e : events) {
    if (!window.contains(e.timestamp)) continue;
    users.insert(e.user_id);
    readers[e.file_id].insert(e.user_id);
  }

  graph::UndirectedGraph g;
  for (auto u : users) g.add_node(u);
  for (const auto& [file, who] : readers) {
    std::vector<graph::NodeIndex> ids;
    ids.reserve(who.size());
    for (auto u : who) ids.push_back(static_cast<graph::NodeIndex>(g.find(u)));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) g.add_edge(ids[i], ids[j]);
    }
  }
  return g;
}

std::vector<WindowReport> windowed_reports(const std::vector<TraceEvent>& events,
                                           std::vector<std::uint64_t> window_lengths, std::size_t samples,
                                           std::uint64_t seed) {
  if (events.empty()) throw ParameterError("windowed_reports: no events");
  std::sort(window_lengths.begin(), window_lengths.end());
  const std::uint64_t start =
      std::min_element(events.begin(), events.end(), [](const auto& a, const auto& b) {
        return a.timestamp < b.timestamp;
      })->timestamp;

  std::vector<WindowReport> out;
  for (std::uint64_t length : window_lengths) {
    if (length == 0) throw ParameterError("windowed_reports: window length must be positive");
    WindowReport wr;
    wr.window = {start, length};
    const auto g = build_sharing_graph(events, wr.window);
    wr.n_nodes = g.node_count();
    wr.n_links = g.edge_count();
    if (g.edge_count() > 0) {
      wr.report = graph::small_world_report(g, samples, derive_seed(seed, length));
    }
    out.push_back(std::move(wr));
  }
  return out;
}

std::vector<TraceEvent> synthetic_clustered_trace(const SyntheticTraceSpec& spec) {
  if (spec.groups == 0 || spec.users_per_group == 0 || spec.files_per_group == 0 || spec.duration_seconds == 0) {
    throw ParameterError("synthetic_clustered_trace: sizes must be positive");
  }
  Rng rng(spec.seed);
  std::vector<TraceEvent> events;
  events.reserve(spec.groups * spec.users_per_group * spec.accesses_per_user);
  for (std::size_t g = 0; g < spec.groups; ++g) {
    for (std::size_t u = 0; u < spec.users_per_group; ++u) {
      const std::string user = "g" + std::to_string(g) + "u" + std::to_string(u);
      for (std::size_t a = 0; a < spec.accesses_per_user; ++a) {
        std::size_t group = g;
        if (spec.groups > 1 && rng.bernoulli(spec.cross_group_probability)) {
          group = (g + 1 + rng.below(spec.groups - 1)) % spec.groups;
        }
        const auto file = rng.below(spec.files_per_group);
        const auto ts = spec.start + rng.below(spec.duration_seconds);
        events.push_back({user, "g" + std::to_string(group) + "f" + std::to_string(file), ts});
      }
    }
  }
  return events;
}

}  // namespace swloc::trace
