// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "swloc/bloom.hpp"
#include "swloc/cli.hpp"
#include "swloc/graph.hpp"
#include "swloc/random.hpp"
#include "swloc/sim.hpp"
#include "swloc/topology.hpp"
#include "swloc/trace.hpp"
#include "swloc/workload.hpp"

using namespace swloc;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!ok) {
      pass = false;
      detail += " [X]";
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double measured_fp(const bloom::BloomFilter& f, std::uint64_t probes, const char* prefix) {
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < probes; ++i) hits += f.contains(prefix + std::to_string(i)) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(probes);
}

bloom::BloomFilter filled(const bloom::BloomParams& p, std::uint64_t n) {
  bloom::BloomFilter f(p);
  for (std::uint64_t i = 0; i < n; ++i) f.insert("member-" + std::to_string(i));
  return f;
}

// 1: 2 bytes per entry keeps false positives under 0.1%.
Verdict bloom_sizing() {
  Verdict v;
  constexpr std::uint64_t n = 1'000'000, probes = 100'000;
  const double se = std::sqrt(0.001 * 0.999 / probes);

  const auto sized = bloom::size_for(n, 0.001);
  const double bits = static_cast<double>(sized.m) / n;
  v.require(bits <= 16.0, fmt("size_for: %.3f bits/entry <= 16", bits));
  const double fp_sized = measured_fp(filled(sized, n), probes, "probe-a-");
  v.require(fp_sized < 0.001 + 3 * se, fmt("measured fp %.5f < 0.001 + 3SE", fp_sized));

  bloom::BloomParams two_bytes;
  two_bytes.m = 16 * n;
  two_bytes.k = bloom::optimal_k(two_bytes.m, n);
  const double fp16 = measured_fp(filled(two_bytes, n), probes, "probe-b-");
  v.require(fp16 < 0.001, fmt("16 bits/entry, k=%.0f: measured fp %.5f < 0.001", two_bytes.k, fp16));
  return v;
}

// 2: empirical rates follow (1 - e^{-kn/m})^k.
Verdict analytic_fidelity() {
  Verdict v;
  struct Point {
    std::uint64_t n, m;
    std::uint32_t k;
  };
  const std::vector<Point> grid = {{1000, 4000, 3},   {1000, 8000, 6},    {1000, 12000, 8},
                                   {5000, 20000, 2},  {5000, 40000, 5},   {5000, 60000, 4},
                                   {20000, 80000, 3}, {20000, 160000, 4}, {20000, 240000, 8}};
  constexpr std::uint64_t probes = 100'000;
  std::size_t ok = 0;
  double worst = 0.0;
  for (const auto& p : grid) {
    bloom::BloomParams params;
    params.m = p.m;
    params.k = p.k;
    const double analytic = bloom::false_positive_rate(p.n, p.m, p.k);
    const double got = measured_fp(filled(params, p.n), probes, "grid-");
    const double se = std::sqrt(analytic * (1 - analytic) / probes);
    const double tol = std::max(0.15 * analytic, 3 * se);
    worst = std::max(worst, std::abs(got - analytic) / tol);
    ok += std::abs(got - analytic) <= tol ? 1 : 0;
  }
  v.require(ok == grid.size(), fmt("%.0f/9 grid points within max(15%%, 3SE); worst |err|/tol = %.2f",
                                   static_cast<double>(ok), worst));
  return v;
}

// 3: 68% of requests served by the top 1% of files.
Verdict zipf_anchor() {
  Verdict v;
  const double f = workload::fraction_served(1.0, 1'000'000, 0.01).fraction_served;
  v.require(std::abs(f - 0.680) <= 0.005, fmt("fraction_served = %.6f, |x - 0.680| <= 0.005", f));
  return v;
}

// 4: 20 MB of filter memory for 10^7 files.
Verdict memory_estimate() {
  Verdict v;
  cli::EstimateOptions opt;  // 10^7 files, 10^3 nodes, 0.1% fp, 10-day lifetime
  std::ostringstream out, err;
  v.require(cli::cmd_estimate(opt, out, err) == 0, "cmd_estimate exit 0");
  const auto r = cli::compute_estimate(opt);
  v.require(r.m / 8 <= 20'000'000, fmt("m/8 = %.0f bytes <= 20000000", static_cast<double>(r.m / 8)));
  v.require(r.bits_per_entry <= 16.0, fmt("%.3f bits/entry <= 16", r.bits_per_entry));
  return v;
}

// 5: about 24 KBps per node.
Verdict traffic_estimate() {
  Verdict v;
  const double bps = sim::estimate_traffic(1e7, 1e3, 10 * 86400.0, 2.0, 1.2, 1.0);
  v.require(std::abs(bps - 24000.0) <= 0.2 * 24000.0, fmt("estimate = %.1f B/s, within 20%% of 24000", bps));
  return v;
}

// 6: micro-trace golden values and a synthetic clustered trace.
Verdict trace_pipeline() {
  Verdict v;
  std::ifstream in(SWLOC_FIXTURE_DIR "/micro_trace.csv");
  const auto events = trace::parse_trace(in).events;
  const auto w = trace::windowed_reports(events, {86400, 2 * 86400}, 8, cli::kDefaultSeed);
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  const auto& d1 = w[0].report->observed;
  const auto& d2 = w[1].report->observed;
  const bool golden = w[0].n_nodes == 6 && w[0].n_links == 5 && d1.lcc_nodes == 5 && d1.lcc_links == 5 &&
                      close(d1.clustering, 7.0 / 12.0) && close(d1.avg_path_length, 1.7) && w[1].n_nodes == 8 &&
                      w[1].n_links == 10 && d2.lcc_nodes == 7 && d2.lcc_links == 10 &&
                      close(d2.clustering, 5.0 / 6.0) && close(d2.avg_path_length, 38.0 / 21.0);
  v.require(golden, "(a) fixture 1d/2d metrics exact to 1e-12");

  const auto synthetic = trace::synthetic_clustered_trace({});
  const auto r = *trace::windowed_reports(synthetic, {30 * 86400}, 16, cli::kDefaultSeed)[0].report;
  v.require(r.clustering_ratio > 5.0, fmt("(b) C %.3f vs random %.3f, ratio %.2f > 5", r.observed.clustering,
                                          r.random_baseline.clustering, r.clustering_ratio));
  v.require(r.path_ratio < 2.0, fmt("L %.3f vs random %.3f, ratio %.2f < 2", r.observed.avg_path_length,
                                    r.random_baseline.avg_path_length, r.path_ratio));
  return v;
}

// 7: graph metrics against exact values and brute force.
Verdict graph_oracles() {
  Verdict v;
  bool complete_ok = true;
  for (std::size_t n = 2; n <= 12; ++n) {
    auto g = graph::UndirectedGraph::with_numbered_nodes(n);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b) g.add_edge(a, b);
    if (n >= 3) complete_ok &= graph::clustering_coefficient(g) == 1.0;
    complete_ok &= graph::average_path_length(g) == 1.0;
  }
  v.require(complete_ok, "K_n: clustering 1, path 1 exactly");

  const double ring = graph::clustering_coefficient(oracle::ring_lattice(40, 4));
  v.require(std::abs(ring - 0.5) <= 1e-12, "ring lattice k=4: clustering 0.5 (1e-12)");

  graph::UndirectedGraph p3;
  p3.add_edge("a", "b");
  p3.add_edge("b", "c");
  v.require(graph::average_path_length(p3) == 4.0 / 3.0, "path of 3: 4/3 exactly");

  Rng rng(2002);
  std::size_t agree = 0;
  for (int t = 0; t < 50; ++t) {
    const auto n = 3 + rng.below(28);
    const auto m = rng.below(std::min<std::uint64_t>(n * (n - 1) / 2, 3 * n) + 1);
    const auto g = graph::random_graph_gnm(n, m, rng.next());
    bool same = std::abs(graph::clustering_coefficient(g) - oracle::clustering(g)) <= 1e-12;
    if (oracle::largest_component(g).size() >= 2) {
      same &= std::abs(graph::average_path_length(g) - oracle::average_path_length(g)) <= 1e-12;
    }
    agree += same ? 1 : 0;
  }
  v.require(agree == 50, fmt("Floyd-Warshall oracle agrees on %.0f/50 random graphs", static_cast<double>(agree)));
  return v;
}

sim::SimConfig desk_config(sim::ForwardStrategy strategy) {
  sim::SimConfig cfg;
  cfg.overlay.n_clusters = 10;
  cfg.overlay.nodes_per_cluster = 50;
  cfg.overlay.intra_degree = 6;
  cfg.overlay.wiring = topology::Wiring::random;
  cfg.overlay.wiring_param = 2.0;
  cfg.overlay.seed = cli::kDefaultSeed;
  cfg.requests.zipf = {1.0, 1000, cli::kDefaultSeed};
  cfg.requests.coverage = 0.1;
  cfg.requests.repeat_probability = 0.0;
  cfg.strategy = strategy;
  cfg.rounds = 200;
  cfg.seed = cli::kDefaultSeed;
  return cfg;
}

// 8: simulator properties at desk scale.
Verdict simulator_properties() {
  Verdict v;
  using sim::ForwardStrategy;
  std::vector<sim::SimMetrics> runs;
  for (auto s : {ForwardStrategy::unicast_random, ForwardStrategy::gateway_multicast, ForwardStrategy::flood}) {
    runs.push_back(sim::sim_run(desk_config(s)));
  }
  std::uint64_t fn = 0, visited = 0;
  for (const auto& m : runs) {
    fn += m.false_negative_lookups;
    visited = std::max(visited, m.clusters_visited_max);
  }
  v.require(fn == 0, fmt("(i) %.0f false negatives", static_cast<double>(fn)));
  v.require(visited <= 10, fmt("(ii) clusters_visited_max %.0f <= 10", static_cast<double>(visited)));
  v.require(runs[2].unresolved == 0, fmt("(iii) flood unresolved %.0f", static_cast<double>(runs[2].unresolved)));

  const auto& m = runs[0];
  const double expected = workload::fraction_served(1.0, 1000, 0.1).fraction_served;
  const double got = static_cast<double>(m.served_local) / static_cast<double>(m.requests_total);
  const double se = std::sqrt(expected * (1 - expected) / static_cast<double>(m.requests_total));
  v.require(std::abs(got - expected) <= 3 * se, fmt("(iv) local %.4f vs %.4f (3SE %.4f)", got, expected, 3 * se));

  const auto again = sim::sim_run(desk_config(ForwardStrategy::unicast_random));
  v.require(again == m && sim::metrics_to_json(again) == sim::metrics_to_json(m), "(v) identical rerun");
  return v;
}

// 9: a little rewiring shortens paths while clustering stays.
Verdict small_world_emergence() {
  Verdict v;
  topology::OverlaySpec spec;
  spec.n_clusters = 20;
  spec.nodes_per_cluster = 25;
  spec.intra_degree = 6;
  spec.wiring = topology::Wiring::rewire;
  spec.seed = cli::kDefaultSeed;
  spec.wiring_param = 0.0;
  const auto base = graph::measure(topology::build_overlay(spec).graph);
  std::string best;
  bool any = false;
  for (double beta : {0.01, 0.02, 0.05, 0.1}) {
    spec.wiring_param = beta;
    const auto m = graph::measure(topology::build_overlay(spec).graph);
    const double c_rel = m.clustering / base.clustering;
    const double l_drop = 1.0 - m.avg_path_length / base.avg_path_length;
    const bool ok = std::abs(c_rel - 1.0) <= 0.2 && l_drop >= 0.3;
    any |= ok;
    best += fmt("beta %.2f: C x%.2f, L %+.0f%%", beta, c_rel, -100 * l_drop) + (ok ? " ok" : "") + ", ";
  }
  best += fmt("base C %.3f L %.2f", base.clustering, base.avg_path_length);
  v.require(any, best);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "bloom sizing", 30, bloom_sizing},
      {2, "analytic fp fidelity", 60, analytic_fidelity},
      {3, "zipf 68% anchor", 1, zipf_anchor},
      {4, "memory estimate", 5, memory_estimate},
      {5, "traffic estimate", 1, traffic_estimate},
      {6, "trace pipeline", 120, trace_pipeline},
      {7, "graph metric oracles", 30, graph_oracles},
      {8, "simulator properties", 60, simulator_properties},
      {9, "small-world emergence", 120, small_world_emergence},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(secs < c.budget_seconds, fmt("%.2fs < %.0fs", secs, c.budget_seconds));
    std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  return failures;
}
