#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace swloc::graph {

using NodeIndex = std::uint32_t;

/// Simple undirected graph over opaque string node ids.
///
/// Nodes are stored densely in insertion order; adjacency lists are kept
/// sorted so that edge lookup and neighbor intersection are logarithmic /
/// linear. Self-loops are rejected and parallel edges collapse.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  /// Returns the index of `id`, inserting it if new.
  NodeIndex add_node(std::string_view id);
  /// Adds nodes 0..n-1 named by their decimal index.
  static UndirectedGraph with_numbered_nodes(std::size_t n);

  /// Returns false if the edge already existed. Throws ParameterError on u == v.
  bool add_edge(NodeIndex u, NodeIndex v);
  bool add_edge(std::string_view u, std::string_view v);
  bool remove_edge(NodeIndex u, NodeIndex v);
  bool has_edge(NodeIndex u, NodeIndex v) const;

  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  std::size_t degree(NodeIndex v) const { return adj_[v].size(); }
  const std::vector<NodeIndex>& neighbors(NodeIndex v) const { return adj_[v]; }
  const std::string& name(NodeIndex v) const { return names_[v]; }
  /// Index of `id` or -1 if absent.
  std::int64_t find(std::string_view id) const;

  /// Edges as (u, v) with u < v, sorted.
  std::vector<std::pair<NodeIndex, NodeIndex>> edges() const;

  /// Subgraph induced by `nodes` (kept in the given order).
  UndirectedGraph induced(const std::vector<NodeIndex>& nodes) const;

  /// Structural equality on node names and edge sets, ignoring insertion order.
  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<NodeIndex>> adj_;
  std::size_t edges_ = 0;
};

struct GraphMetrics {
  std::size_t n_nodes = 0;
  std::size_t n_links = 0;
  double clustering = 0.0;
  double avg_path_length = 0.0;  ///< over the largest connected component
  std::size_t lcc_nodes = 0;
  std::size_t lcc_links = 0;
};

struct SmallWorldReport {
  GraphMetrics observed;
  GraphMetrics random_baseline;  ///< means over baseline_samples G(n, m) draws
  std::size_t baseline_samples = 0;
  double clustering_ratio = 0.0;  ///< infinite when baseline clustering is 0
  double path_ratio = 0.0;
};

/// Mean local clustering over nodes of degree >= 2; 0 if there are none.
double clustering_coefficient(const UndirectedGraph& g);

/// Local clustering of one node; requires degree >= 2.
double local_clustering(const UndirectedGraph& g, NodeIndex v);

/// Exact mean shortest-path length over unordered pairs of the largest
/// connected component. Throws UndefinedMetricError if it has < 2 nodes.
double average_path_length(const UndirectedGraph& g);

/// Connected components as node-index lists (each ascending by index).
std::vector<std::vector<NodeIndex>> connected_components(const UndirectedGraph& g);

/// Induced subgraph on the largest component; equal sizes are broken by the
/// lexicographically smallest node id in each component.
UndirectedGraph largest_connected_component(const UndirectedGraph& g);

/// Uniform simple graph with exactly n nodes ("0".."n-1") and m edges.
UndirectedGraph random_graph_gnm(std::size_t n, std::size_t m, std::uint64_t seed);

/// Metrics of `g`: whole-graph counts plus clustering / path length of its LCC.
GraphMetrics measure(const UndirectedGraph& g);

/// Observed LCC metrics against `samples` size-matched G(n, m) graphs.
SmallWorldReport small_world_report(const UndirectedGraph& g, std::size_t samples, std::uint64_t seed);

/// Edge-list text: one "u v" pair per line, '#' comments, blank lines ignored.
/// Throws FormatError (with line number) on malformed lines or self-loops.
UndirectedGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const UndirectedGraph& g);

}  // namespace swloc::graph
