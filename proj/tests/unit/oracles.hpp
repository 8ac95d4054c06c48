#pragma once

// Brute-force reference implementations used to check the library.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "swloc/graph.hpp"

namespace oracle {

using swloc::graph::UndirectedGraph;

inline std::vector<std::vector<bool>> adjacency(const UndirectedGraph& g) {
  const auto n = g.node_count();
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = true;
  return a;
}

// Mean over nodes of degree >= 2 of closed pairs / possible pairs, by
// enumerating every neighbor pair.
inline double clustering(const UndirectedGraph& g) {
  const auto a = adjacency(g);
  const auto n = g.node_count();
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> nb;
    for (std::size_t u = 0; u < n; ++u)
      if (a[v][u]) nb.push_back(u);
    if (nb.size() < 2) continue;
    std::size_t closed = 0;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) closed += a[nb[i]][nb[j]] ? 1 : 0;
    sum += static_cast<double>(closed) / (nb.size() * (nb.size() - 1) / 2.0);
    ++counted;
  }
  return counted ? sum / static_cast<double>(counted) : 0.0;
}

// All-pairs distances by Floyd-Warshall; unreachable pairs stay at max.
inline std::vector<std::vector<std::uint32_t>> floyd_warshall(const UndirectedGraph& g) {
  constexpr auto inf = std::numeric_limits<std::uint32_t>::max() / 2;
  const auto n = g.node_count();
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, inf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Largest component by reachability in the distance matrix, ties to the
// smallest member name.
inline std::vector<std::size_t> largest_component(const UndirectedGraph& g) {
  const auto d = floyd_warshall(g);
  const auto n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> best;
  std::string best_name;
  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v]) continue;
    std::vector<std::size_t> comp;
    std::string smallest = g.name(static_cast<std::uint32_t>(v));
    for (std::size_t u = 0; u < n; ++u) {
      if (d[v][u] < std::numeric_limits<std::uint32_t>::max() / 2) {
        seen[u] = true;
        comp.push_back(u);
        smallest = std::min(smallest, g.name(static_cast<std::uint32_t>(u)));
      }
    }
    if (comp.size() > best.size() || (comp.size() == best.size() && smallest < best_name)) {
      best = comp;
      best_name = smallest;
    }
  }
  return best;
}

inline double average_path_length(const UndirectedGraph& g) {
  const auto d = floyd_warshall(g);
  const auto comp = largest_component(g);
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (std::size_t j = i + 1; j < comp.size(); ++j) {
      total += d[comp[i]][comp[j]];
      ++pairs;
    }
  return total / static_cast<double>(pairs);
}

inline UndirectedGraph lcc_graph(const UndirectedGraph& g) {
  const auto comp = largest_component(g);
  std::vector<std::uint32_t> nodes(comp.begin(), comp.end());
  return g.induced(nodes);
}

// Ring lattice: each node joined to the kappa/2 nearest on each side.
inline UndirectedGraph ring_lattice(std::size_t n, std::size_t kappa) {
  auto g = UndirectedGraph::with_numbered_nodes(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t s = 1; s <= kappa / 2; ++s)
      g.add_edge(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>((v + s) % n));
  return g;
}

}  // namespace oracle
