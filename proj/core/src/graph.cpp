#include "swloc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "swloc/error.hpp"
#include "swloc/random.hpp"

namespace swloc::graph {

NodeIndex UndirectedGraph::add_node(std::string_view id) {
  if (id.empty()) throw ParameterError("graph: empty node id");
  auto [it, inserted] = index_.try_emplace(std::string(id), static_cast<NodeIndex>(names_.size()));
  if (inserted) {
    names_.emplace_back(id);
    adj_.emplace_back();
  }
  return it->second;
}

UndirectedGraph UndirectedGraph::with_numbered_nodes(std::size_t n) {
  UndirectedGraph g;
  g.names_.reserve(n);
  g.adj_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g.add_node(std::to_string(i));
  return g;
}

bool UndirectedGraph::add_edge(NodeIndex u, NodeIndex v) {
  if (u == v) throw ParameterError("graph: self-loop on node " + names_.at(u));
  auto& au = adj_.at(u);
  auto pos = std::lower_bound(au.begin(), au.end(), v);
  if (pos != au.end() && *pos == v) return false;
  au.insert(pos, v);
  auto& av = adj_.at(v);
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edges_;
  return true;
}

bool UndirectedGraph::add_edge(std::string_view u, std::string_view v) {
  const NodeIndex a = add_node(u);
  const NodeIndex b = add_node(v);
  return add_edge(a, b);
}

bool UndirectedGraph::remove_edge(NodeIndex u, NodeIndex v) {
  auto& au = adj_.at(u);
  auto pos = std::lower_bound(au.begin(), au.end(), v);
  if (pos == au.end() || *pos != v) return false;
  au.erase(pos);
  auto& av = adj_.at(v);
  av.erase(std::lower_bound(av.begin(), av.end(), u));
  --edges_;
  return true;
}

bool UndirectedGraph::has_edge(NodeIndex u, NodeIndex v) const {
  const auto& au = adj_.at(u);
  return std::binary_search(au.begin(), au.end(), v);
}

std::int64_t UndirectedGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::vector<std::pair<NodeIndex, NodeIndex>> UndirectedGraph::edges() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  out.reserve(edges_);
  for (NodeIndex u = 0; u < adj_.size(); ++u) {
    for (NodeIndex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

UndirectedGraph UndirectedGraph::induced(const std::vector<NodeIndex>& nodes) const {
  UndirectedGraph sub;
  std::vector<std::int64_t> remap(names_.size(), -1);
  for (NodeIndex v : nodes) remap[v] = sub.add_node(names_[v]);
  for (NodeIndex v : nodes) {
    for (NodeIndex w : adj_[v]) {
      if (v < w && remap[w] >= 0) {
        sub.add_edge(static_cast<NodeIndex>(remap[v]), static_cast<NodeIndex>(remap[w]));
      }
    }
  }
  return sub;
}

bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  auto canonical = [](const UndirectedGraph& g) {
    std::vector<std::pair<std::string, std::string>> es;
    for (auto [u, v] : g.edges()) {
      const auto& x = g.name(u);
      const auto& y = g.name(v);
      es.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(es.begin(), es.end());
    std::vector<std::string> ns(g.names_);
    std::sort(ns.begin(), ns.end());
    return std::make_pair(ns, es);
  };
  return canonical(a) == canonical(b);
}

double local_clustering(const UndirectedGraph& g, NodeIndex v) {
  const auto& nv = g.neighbors(v);
  const std::size_t d = nv.size();
  if (d < 2) throw UndefinedMetricError("local clustering needs degree >= 2");
  // Each neighbor-neighbor edge is seen from both ends.
  std::size_t twice_links = 0;
  for (NodeIndex u : nv) {
    const auto& nu = g.neighbors(u);
    auto i = nv.begin();
    auto j = nu.begin();
    while (i != nv.end() && j != nu.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        ++twice_links;
        ++i;
        ++j;
      }
    }
  }
  return static_cast<double>(twice_links) / static_cast<double>(d * (d - 1));
}

double clustering_coefficient(const UndirectedGraph& g) {
  double sum = 0.0;
  std::size_t counted = 0;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) < 2) continue;
    sum += local_clustering(g, v);
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

std::vector<std::vector<NodeIndex>> connected_components(const UndirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<NodeIndex>> comps;
  std::vector<NodeIndex> stack;
  for (NodeIndex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<NodeIndex> comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeIndex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (NodeIndex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

UndirectedGraph largest_connected_component(const UndirectedGraph& g) {
  const auto comps = connected_components(g);
  if (comps.empty()) return {};
  auto min_name = [&g](const std::vector<NodeIndex>& c) {
    const std::string* best = &g.name(c.front());
    for (NodeIndex v : c) {
      if (g.name(v) < *best) best = &g.name(v);
    }
    return *best;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i) {
    if (comps[i].size() > comps[best].size() ||
        (comps[i].size() == comps[best].size() && min_name(comps[i]) < min_name(comps[best]))) {
      best = i;
    }
  }
  if (comps[best].size() == g.node_count()) return g;
  return g.induced(comps[best]);
}

namespace {

// Sum of BFS distances over ordered pairs of a connected graph.
std::uint64_t total_distance(const UndirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> dist(n);
  std::vector<NodeIndex> queue(n);
  std::uint64_t total = 0;
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  for (NodeIndex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[s] = 0;
    std::size_t head = 0;
    std::size_t tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const NodeIndex v = queue[head++];
      total += dist[v];
      for (NodeIndex w : g.neighbors(v)) {
        if (dist[w] == kUnseen) {
          dist[w] = dist[v] + 1;
          queue[tail++] = w;
        }
      }
    }
  }
  return total;
}

}  // namespace

double average_path_length(const UndirectedGraph& g) {
  const UndirectedGraph lcc = largest_connected_component(g);
  const std::size_t n = lcc.node_count();
  if (n < 2) throw UndefinedMetricError("average path length needs a component of at least 2 nodes");
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(total_distance(lcc)) / pairs;
}

UndirectedGraph random_graph_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t total = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > total) throw ParameterError("random_graph_gnm: more edges than node pairs");
  UndirectedGraph g = UndirectedGraph::with_numbered_nodes(n);
  if (m == 0) return g;

  // Floyd's subset sampling over pair indices; for dense targets sample the
  // complement instead.
  const bool complement = m > total / 2;
  const std::uint64_t pick = complement ? total - m : m;
  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(pick) * 2);
  for (std::uint64_t j = total - pick; j < total; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> selected;
  if (complement) {
    selected.reserve(static_cast<std::size_t>(m));
    for (std::uint64_t p = 0; p < total; ++p) {
      if (!chosen.count(p)) selected.push_back(p);
    }
  } else {
    selected.assign(chosen.begin(), chosen.end());
    std::sort(selected.begin(), selected.end());
  }

  // Row u holds pairs (u, u+1..n-1) starting at offset u*(2n-u-1)/2.
  const auto row_start = [n](std::uint64_t u) { return u * (2 * n - u - 1) / 2; };
  std::uint64_t u = 0;
  for (std::uint64_t p : selected) {
    while (row_start(u + 1) <= p) ++u;
    const std::uint64_t v = u + 1 + (p - row_start(u));
    g.add_edge(static_cast<NodeIndex>(u), static_cast<NodeIndex>(v));
  }
  return g;
}

GraphMetrics measure(const UndirectedGraph& g) {
  GraphMetrics out;
  out.n_nodes = g.node_count();
  out.n_links = g.edge_count();
  const UndirectedGraph lcc = largest_connected_component(g);
  out.lcc_nodes = lcc.node_count();
  out.lcc_links = lcc.edge_count();
  out.clustering = clustering_coefficient(lcc);
  out.avg_path_length = average_path_length(lcc);
  return out;
}

SmallWorldReport small_world_report(const UndirectedGraph& g, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw ParameterError("small_world_report: samples must be at least 1");
  SmallWorldReport report;
  report.observed = measure(g);
  report.baseline_samples = samples;

  const std::size_t n = report.observed.lcc_nodes;
  const std::size_t m = report.observed.lcc_links;
  double clustering = 0.0;
  double path = 0.0;
  double lcc_nodes = 0.0;
  double lcc_links = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const UndirectedGraph r = random_graph_gnm(n, m, derive_seed(seed, s));
    const GraphMetrics rm = measure(r);
    clustering += rm.clustering;
    path += rm.avg_path_length;
    lcc_nodes += static_cast<double>(rm.lcc_nodes);
    lcc_links += static_cast<double>(rm.lcc_links);
  }
  const double k = static_cast<double>(samples);
  auto& base = report.random_baseline;
  base.n_nodes = n;
  base.n_links = m;
  base.clustering = clustering / k;
  base.avg_path_length = path / k;
  base.lcc_nodes = static_cast<std::size_t>(std::llround(lcc_nodes / k));
  base.lcc_links = static_cast<std::size_t>(std::llround(lcc_links / k));

  report.clustering_ratio = base.clustering > 0.0 ? report.observed.clustering / base.clustering
                                                  : std::numeric_limits<double>::infinity();
  report.path_ratio = report.observed.avg_path_length / base.avg_path_length;
  return report;
}

UndirectedGraph read_edge_list(std::istream& in) {
  UndirectedGraph g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string u, v, extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw FormatError("edge list line " + std::to_string(lineno) + ": expected 'u v'");
    }
    if (u == v) throw FormatError("edge list line " + std::to_string(lineno) + ": self-loop");
    g.add_edge(u, v);
  }
  return g;
}

void write_edge_list(std::ostream& out, const UndirectedGraph& g) {
  for (auto [u, v] : g.edges()) out << g.name(u) << ' ' << g.name(v) << '\n';
}

}  // namespace swloc::graph
