#include "swloc/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "swloc/error.hpp"
#include "swloc/random.hpp"

namespace swloc::topology {

using graph::NodeIndex;

namespace {

// Stream tags keep the wiring modes independent for one base seed.
constexpr std::uint64_t kClusterStream = 0x636c7573;
constexpr std::uint64_t kRandomStream = 0x72616e64;
constexpr std::uint64_t kGatewayStream = 0x67617465;
constexpr std::uint64_t kRewireStream = 0x72657769;
constexpr std::uint64_t kRepairStream = 0x72657061;

NodeIndex random_node_in(const Overlay& o, std::size_t cluster, Rng& rng) {
  return static_cast<NodeIndex>(o.first_node(cluster) + rng.below(o.nodes_per_cluster));
}

std::size_t random_other_cluster(std::size_t c, std::size_t n_clusters, Rng& rng) {
  return (c + 1 + rng.below(n_clusters - 1)) % n_clusters;
}

void add_cross_edge(Overlay& o, NodeIndex u, NodeIndex v) {
  o.graph.add_edge(u, v);
  o.gateways[o.cluster_of[u]].insert(u);
  o.gateways[o.cluster_of[v]].insert(v);
}

// Cluster components of the quotient graph, via union-find.
std::vector<std::size_t> cluster_roots(const Overlay& o) {
  std::vector<std::size_t> parent(o.n_clusters);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : o.graph.edges()) {
    if (!o.is_inter(u, v)) continue;
    const auto a = find(o.cluster_of[u]);
    const auto b = find(o.cluster_of[v]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  for (std::size_t c = 0; c < o.n_clusters; ++c) parent[c] = find(c);
  return parent;
}

}  // namespace

std::string to_string(Wiring w) {
  switch (w) {
    case Wiring::random: return "random";
    case Wiring::gateway: return "gateway";
    case Wiring::rewire: return "rewire";
  }
  return "random";
}

Wiring parse_wiring(const std::string& name) {
  if (name == "random") return Wiring::random;
  if (name == "gateway") return Wiring::gateway;
  if (name == "rewire") return Wiring::rewire;
  throw ParameterError("unknown wiring mode '" + name + "' (expected random, gateway or rewire)");
}

void OverlaySpec::validate() const {
  if (n_clusters == 0) throw ParameterError("overlay: need at least one cluster");
  if (nodes_per_cluster < 2) throw ParameterError("overlay: clusters need at least two nodes");
  if (intra_degree == 0 || intra_degree >= nodes_per_cluster) {
    throw ParameterError("overlay: intra_degree must lie in [1, nodes_per_cluster)");
  }
  if (!(wiring_param >= 0.0) || !std::isfinite(wiring_param)) {
    throw ParameterError("overlay: wiring_param must be finite and >= 0");
  }
  if (wiring == Wiring::rewire && wiring_param > 1.0) throw ParameterError("overlay: rewire beta must be <= 1");
}

std::size_t Overlay::inter_edge_count() const {
  std::size_t n = 0;
  for (auto [u, v] : graph.edges()) n += is_inter(u, v) ? 1 : 0;
  return n;
}

Overlay build_clusters(std::size_t n_clusters, std::size_t nodes_per_cluster, std::size_t intra_degree,
                       std::uint64_t seed) {
  const std::size_t g = nodes_per_cluster;
  Overlay o;
  o.n_clusters = n_clusters;
  o.nodes_per_cluster = g;
  o.graph = graph::UndirectedGraph::with_numbered_nodes(n_clusters * g);
  o.cluster_of.resize(n_clusters * g);
  o.gateways.resize(n_clusters);

  const std::size_t half_width = std::max<std::size_t>(1, intra_degree / 2);
  const std::size_t max_edges = g * (g - 1) / 2;
  const std::size_t target = std::min(max_edges, (g * intra_degree + 1) / 2);

  for (std::size_t c = 0; c < n_clusters; ++c) {
    const auto base = static_cast<NodeIndex>(c * g);
    for (std::size_t i = 0; i < g; ++i) o.cluster_of[base + i] = static_cast<std::uint32_t>(c);

    // Ring lattice: each node joined to half_width neighbors on either side.
    std::size_t edges = 0;
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t d = 1; d <= half_width; ++d) {
        const auto j = (i + d) % g;
        if (j != i && o.graph.add_edge(static_cast<NodeIndex>(base + i), static_cast<NodeIndex>(base + j))) ++edges;
      }
    }

    if (edges >= target) continue;
    // Random chords drawn without replacement from the remaining pairs.
    std::vector<std::pair<NodeIndex, NodeIndex>> free_pairs;
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t j = i + 1; j < g; ++j) {
        const auto u = static_cast<NodeIndex>(base + i);
        const auto v = static_cast<NodeIndex>(base + j);
        if (!o.graph.has_edge(u, v)) free_pairs.emplace_back(u, v);
      }
    }
    Rng rng(derive_seed(derive_seed(seed, kClusterStream), c));
    for (std::size_t i = 0; edges < target && i < free_pairs.size(); ++i) {
      const auto pick = i + rng.below(free_pairs.size() - i);
      std::swap(free_pairs[i], free_pairs[pick]);
      o.graph.add_edge(free_pairs[i].first, free_pairs[i].second);
      ++edges;
    }
  }
  return o;
}

Overlay wire_random(Overlay overlay, double edges_per_cluster, std::uint64_t seed) {
  if (!(edges_per_cluster >= 0.0) || !std::isfinite(edges_per_cluster)) {
    throw ParameterError("wire_random: edges_per_cluster must be finite and >= 0");
  }
  if (overlay.n_clusters < 2) return overlay;
  Rng rng(seed);
  for (std::size_t c = 0; c < overlay.n_clusters; ++c) {
    const auto count = rng.poisson(edges_per_cluster);
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto d = random_other_cluster(c, overlay.n_clusters, rng);
      const auto u = random_node_in(overlay, c, rng);
      const auto v = random_node_in(overlay, d, rng);
      add_cross_edge(overlay, u, v);
    }
  }
  return overlay;
}

Overlay wire_gateways(Overlay overlay, std::size_t gateways_per_cluster, std::size_t links_per_gateway,
                      std::uint64_t seed) {
  if (gateways_per_cluster == 0 || gateways_per_cluster > overlay.nodes_per_cluster) {
    throw ParameterError("wire_gateways: gateways_per_cluster must lie in [1, nodes_per_cluster]");
  }
  if (links_per_gateway > overlay.n_clusters - 1) {
    throw ParameterError("wire_gateways: links_per_gateway exceeds the number of other clusters");
  }
  Rng rng(seed);
  std::vector<std::size_t> others;
  for (std::size_t c = 0; c < overlay.n_clusters; ++c) {
    others.clear();
    for (std::size_t d = 0; d < overlay.n_clusters; ++d) {
      if (d != c) others.push_back(d);
    }
    for (std::size_t gi = 0; gi < gateways_per_cluster; ++gi) {
      const auto gw = static_cast<NodeIndex>(overlay.first_node(c) + gi);
      overlay.gateways[c].insert(gw);
      for (std::size_t l = 0; l < links_per_gateway; ++l) {
        const auto pick = l + rng.below(others.size() - l);
        std::swap(others[l], others[pick]);
        const auto target = static_cast<NodeIndex>(overlay.first_node(others[l]) + rng.below(gateways_per_cluster));
        add_cross_edge(overlay, gw, target);
      }
    }
  }
  return overlay;
}

Overlay rewire_watts(Overlay overlay, double beta, std::uint64_t seed) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("rewire_watts: beta must lie in [0, 1]");
  if (overlay.n_clusters < 2 || beta == 0.0) return overlay;
  Rng rng(seed);
  std::vector<std::pair<NodeIndex, NodeIndex>> intra;
  for (auto e : overlay.graph.edges()) {
    if (!overlay.is_inter(e.first, e.second)) intra.push_back(e);
  }
  for (auto [u, v] : intra) {
    if (!rng.bernoulli(beta)) continue;
    const auto d = random_other_cluster(overlay.cluster_of[u], overlay.n_clusters, rng);
    const auto w = random_node_in(overlay, d, rng);
    if (overlay.graph.has_edge(u, w)) continue;
    overlay.graph.remove_edge(u, v);
    add_cross_edge(overlay, u, w);
  }
  return overlay;
}

Overlay repair_connectivity(Overlay overlay, std::uint64_t seed) {
  if (overlay.n_clusters < 2) return overlay;
  Rng rng(seed);
  const auto roots = cluster_roots(overlay);

  // Components listed by smallest member cluster; each one after the first
  // is joined to a random cluster already in the connected part.
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::ptrdiff_t> comp_of_root(overlay.n_clusters, -1);
  for (std::size_t c = 0; c < overlay.n_clusters; ++c) {
    auto& slot = comp_of_root[roots[c]];
    if (slot < 0) {
      slot = static_cast<std::ptrdiff_t>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<std::size_t>(slot)].push_back(c);
  }

  std::vector<std::size_t> joined = comps.front();
  for (std::size_t i = 1; i < comps.size(); ++i) {
    const auto a = joined[rng.below(joined.size())];
    const auto b = comps[i][rng.below(comps[i].size())];
    add_cross_edge(overlay, random_node_in(overlay, a, rng), random_node_in(overlay, b, rng));
    joined.insert(joined.end(), comps[i].begin(), comps[i].end());
  }
  if (!quotient_connected(overlay)) throw ConstructionError("overlay: cluster graph still disconnected after repair");
  return overlay;
}

Overlay build_overlay(const OverlaySpec& spec) {
  spec.validate();
  if (spec.wiring == Wiring::gateway &&
      (spec.gateways_per_cluster == 0 || spec.gateways_per_cluster > spec.nodes_per_cluster)) {
    throw ParameterError("overlay: gateways_per_cluster must lie in [1, nodes_per_cluster]");
  }
  Overlay o = build_clusters(spec.n_clusters, spec.nodes_per_cluster, spec.intra_degree, spec.seed);
  switch (spec.wiring) {
    case Wiring::random:
      o = wire_random(std::move(o), spec.wiring_param, derive_seed(spec.seed, kRandomStream));
      break;
    case Wiring::gateway: {
      const auto links = static_cast<std::size_t>(std::floor(spec.wiring_param));
      o = wire_gateways(std::move(o), spec.gateways_per_cluster, links, derive_seed(spec.seed, kGatewayStream));
      break;
    }
    case Wiring::rewire:
      o = rewire_watts(std::move(o), spec.wiring_param, derive_seed(spec.seed, kRewireStream));
      break;
  }
  return repair_connectivity(std::move(o), derive_seed(spec.seed, kRepairStream));
}

graph::UndirectedGraph quotient_graph(const Overlay& overlay) {
  auto q = graph::UndirectedGraph::with_numbered_nodes(overlay.n_clusters);
  for (auto [u, v] : overlay.graph.edges()) {
    if (overlay.is_inter(u, v)) q.add_edge(overlay.cluster_of[u], overlay.cluster_of[v]);
  }
  return q;
}

bool quotient_connected(const Overlay& overlay) {
  const auto roots = cluster_roots(overlay);
  return std::all_of(roots.begin(), roots.end(), [&](std::size_t r) { return r == roots.front(); });
}

void write_overlay_edges(std::ostream& out, const Overlay& overlay) {
  out << "# overlay: " << overlay.n_clusters << " clusters x " << overlay.nodes_per_cluster << " nodes\n";
  graph::write_edge_list(out, overlay.graph);
}

void write_overlay_clusters(std::ostream& out, const Overlay& overlay) {
  out << "node_id,cluster_id,gateway\n";
  for (NodeIndex v = 0; v < overlay.node_count(); ++v) {
    const auto c = overlay.cluster_of[v];
    out << overlay.graph.name(v) << ',' << c << ',' << (overlay.gateways[c].count(v) ? 1 : 0) << '\n';
  }
}

}  // namespace swloc::topology
