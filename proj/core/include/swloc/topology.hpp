#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "swloc/graph.hpp"

namespace swloc::topology {

enum class Wiring { random, gateway, rewire };

std::string to_string(Wiring w);
/// Throws ParameterError on unknown names.
Wiring parse_wiring(const std::string& name);

/// C clusters of G nodes each. wiring_param means:
///   random  - mean inter-cluster edges drawn per cluster (Poisson)
///   gateway - links per gateway (rounded down)
///   rewire  - rewiring probability beta in [0, 1]
struct OverlaySpec {
  std::size_t n_clusters = 1;
  std::size_t nodes_per_cluster = 2;
  std::size_t intra_degree = 1;
  Wiring wiring = Wiring::random;
  double wiring_param = 0.0;
  std::size_t gateways_per_cluster = 1;  ///< gateway wiring only
  std::uint64_t seed = 0;

  void validate() const;
};

/// Node v belongs to cluster v / nodes_per_cluster; node ids are decimal
/// indices so "lowest node id" is numeric order.
struct Overlay {
  graph::UndirectedGraph graph;
  std::vector<std::uint32_t> cluster_of;
  std::vector<std::set<graph::NodeIndex>> gateways;  ///< per cluster
  std::size_t n_clusters = 0;
  std::size_t nodes_per_cluster = 0;

  std::size_t node_count() const noexcept { return cluster_of.size(); }
  graph::NodeIndex first_node(std::size_t cluster) const {
    return static_cast<graph::NodeIndex>(cluster * nodes_per_cluster);
  }
  bool is_inter(graph::NodeIndex u, graph::NodeIndex v) const { return cluster_of[u] != cluster_of[v]; }
  std::size_t inter_edge_count() const;
};

/// Clusters only: each is a ring lattice plus random chords, no inter edges.
Overlay build_clusters(std::size_t n_clusters, std::size_t nodes_per_cluster, std::size_t intra_degree,
                       std::uint64_t seed);

/// Clusters, the selected wiring, then connectivity repair.
Overlay build_overlay(const OverlaySpec& spec);

/// Adds Poisson(edges_per_cluster) cross edges per cluster between uniform
/// nodes of that cluster and of a uniform other cluster.
Overlay wire_random(Overlay overlay, double edges_per_cluster, std::uint64_t seed);

/// The lowest-id `gateways_per_cluster` nodes of each cluster become gateways;
/// each links to `links_per_gateway` gateways in distinct other clusters.
Overlay wire_gateways(Overlay overlay, std::size_t gateways_per_cluster, std::size_t links_per_gateway,
                      std::uint64_t seed);

/// Each intra-cluster edge is rewired with probability beta: its lower
/// endpoint is kept and the other replaced by a uniform node of another
/// cluster. Rewirings that would duplicate an edge are skipped.
Overlay rewire_watts(Overlay overlay, double beta, std::uint64_t seed);

/// Joins disconnected parts of the cluster-level graph with random cross
/// edges. Throws ConstructionError if no fresh edge is found in 100 draws.
Overlay repair_connectivity(Overlay overlay, std::uint64_t seed);

/// Cluster-level graph: one node per cluster ("0".."C-1"), an edge wherever
/// some inter-cluster link joins two clusters.
graph::UndirectedGraph quotient_graph(const Overlay& overlay);
bool quotient_connected(const Overlay& overlay);

/// Edge list in graph exchange format.
void write_overlay_edges(std::ostream& out, const Overlay& overlay);
/// Sidecar CSV `node_id,cluster_id,gateway`.
void write_overlay_clusters(std::ostream& out, const Overlay& overlay);

}  // namespace swloc::topology
