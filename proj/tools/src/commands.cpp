#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "swloc/bloom.hpp"
#include "swloc/cli.hpp"
#include "swloc/error.hpp"
#include "swloc/sim.hpp"
#include "swloc/topology.hpp"
#include "swloc/trace.hpp"
#include "swloc/workload.hpp"

namespace swloc::cli {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> parts;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParameterError("empty item in list '" + list + "'");
    parts.push_back(item.substr(b, e - b + 1));
  }
  if (parts.empty()) throw ParameterError("empty list");
  return parts;
}

std::string fixed(double v, int digits) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json metrics_json(const graph::GraphMetrics& m) {
  json j;
  j["n_nodes"] = m.n_nodes;
  j["n_links"] = m.n_links;
  j["lcc_nodes"] = m.lcc_nodes;
  j["lcc_links"] = m.lcc_links;
  j["clustering"] = m.clustering;
  j["avg_path_length"] = m.avg_path_length;
  return j;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) {
    err << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

}  // namespace

std::vector<std::uint64_t> parse_durations(const std::string& list) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(list)) {
    std::uint64_t unit = 1;
    std::string_view digits = item;
    switch (item.back()) {
      case 'd': unit = 86400; digits.remove_suffix(1); break;
      case 'h': unit = 3600; digits.remove_suffix(1); break;
      case 's': digits.remove_suffix(1); break;
      default: break;
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || value == 0) {
      throw ParameterError("bad duration '" + item + "' (expected e.g. 7d, 12h, 30s)");
    }
    out.push_back(value * unit);
  }
  return out;
}

std::string format_duration(std::uint64_t seconds) {
  if (seconds > 0 && seconds % 86400 == 0) return std::to_string(seconds / 86400) + "d";
  if (seconds > 0 && seconds % 3600 == 0) return std::to_string(seconds / 3600) + "h";
  return std::to_string(seconds) + "s";
}

std::vector<double> parse_number_list(const std::string& list) {
  std::vector<double> out;
  for (const auto& item : split_list(list)) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) throw ParameterError("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

int cmd_analyze_trace(const AnalyzeTraceOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto windows = parse_durations(opt.windows);
    std::ifstream in(opt.trace);
    if (!in) {
      err << "error: cannot read trace " << opt.trace << '\n';
      return int{kUsageError};
    }
    const auto parsed = trace::parse_trace(in);
    if (!parsed.ok()) {
      for (const auto& issue : parsed.issues) err << opt.trace << ':' << issue.line << ": " << issue.message << '\n';
      return int{kUsageError};
    }

    json report;
    report["schema_version"] = 1;
    report["trace"] = opt.trace;
    report["events"] = parsed.events.size();
    report["samples"] = opt.samples;
    report["seed"] = opt.seed;
    report["windows"] = json::array();

    if (parsed.events.empty()) {
      out << "trace is empty; no windows to report\n";
      return write_file(opt.out, report.dump(2) + "\n", err) ? int{kOk} : int{kRuntimeFailure};
    }

    const auto rows = trace::windowed_reports(parsed.events, windows, opt.samples, opt.seed);
    char line[256];
    std::snprintf(line, sizeof line, "%-8s %7s %7s %9s %9s %10s %8s %10s %8s\n", "interval", "nodes", "links",
                  "lcc_nodes", "lcc_links", "clustering", "path", "rand_clust", "rand_path");
    out << line;
    for (const auto& w : rows) {
      json j;
      j["interval"] = format_duration(w.window.length);
      j["start"] = w.window.start;
      j["length_seconds"] = w.window.length;
      j["n_nodes"] = w.n_nodes;
      j["n_links"] = w.n_links;
      j["empty"] = w.empty();
      if (w.empty()) {
        std::snprintf(line, sizeof line, "%-8s %7zu %7zu %9s\n", format_duration(w.window.length).c_str(), w.n_nodes,
                      w.n_links, "(empty)");
      } else {
        const auto& r = *w.report;
        j["observed"] = metrics_json(r.observed);
        j["random_baseline"] = metrics_json(r.random_baseline);
        j["baseline_samples"] = r.baseline_samples;
        j["clustering_ratio"] = r.clustering_ratio;
        j["path_ratio"] = r.path_ratio;
        std::snprintf(line, sizeof line, "%-8s %7zu %7zu %9zu %9zu %10s %8s %10s %8s\n",
                      format_duration(w.window.length).c_str(), w.n_nodes, w.n_links, r.observed.lcc_nodes,
                      r.observed.lcc_links, fixed(r.observed.clustering, 4).c_str(),
                      fixed(r.observed.avg_path_length, 4).c_str(), fixed(r.random_baseline.clustering, 4).c_str(),
                      fixed(r.random_baseline.avg_path_length, 4).c_str());
      }
      out << line;
      report["windows"].push_back(std::move(j));
    }
    return write_file(opt.out, report.dump(2) + "\n", err) ? int{kOk} : int{kRuntimeFailure};
  });
}

EstimateReport compute_estimate(const EstimateOptions& opt) {
  if (!(opt.files >= 1.0) || !(opt.nodes >= 1.0)) throw ParameterError("--files and --nodes must be at least 1");
  if (!(opt.fp > 0.0)) throw ParameterError("--fp must be positive");
  if (!(opt.lifetime_days > 0.0) || !(opt.period_secs > 0.0)) {
    throw ParameterError("--lifetime-days and --period-secs must be positive");
  }
  if (!(opt.fanout >= 0.0)) throw ParameterError("--fanout must be >= 0");
  if (opt.bytes_per_entry && !(*opt.bytes_per_entry > 0.0)) throw ParameterError("--bytes-per-entry must be positive");

  const auto n = static_cast<std::uint64_t>(std::llround(opt.files));
  EstimateReport r;
  bloom::BloomParams p;
  if (opt.fp >= 1.0) {
    p.m = 8;
    p.k = 1;
    r.minimal_filter = true;
  } else {
    p = bloom::size_for(n, opt.fp);
  }
  r.m = p.m;
  r.k = p.k;
  r.bits_per_entry = static_cast<double>(p.m) / opt.files;
  r.memory_bytes = static_cast<double>(p.m) / 8.0;
  r.expected_fp = bloom::false_positive_rate(n, p.m, p.k);
  const double bytes_per_entry = opt.bytes_per_entry.value_or(r.bits_per_entry / 8.0);
  r.traffic_bytes_per_sec = sim::estimate_traffic(opt.files, opt.nodes, opt.lifetime_days * 86400.0, bytes_per_entry,
                                                  opt.fanout, opt.period_secs);
  return r;
}

int cmd_estimate(const EstimateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto r = compute_estimate(opt);
    if (r.minimal_filter) err << "warning: target fp >= 1 needs no filter; reporting the minimal 8-bit filter\n";
    const double bpe = opt.bytes_per_entry.value_or(r.bits_per_entry / 8.0);
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "filter sizing for %.0f files at target fp %g\n"
                  "  m = %llu bits, k = %u\n"
                  "  %.3f bits (%.3f bytes) per entry\n"
                  "  memory per node: %.3f MB (%.0f bytes)\n"
                  "  expected fp: %.6g\n"
                  "traffic, assuming each of %.0f nodes re-advertises its share of files\n"
                  "  at %.3f bytes/entry to %g peers every %g s (file lifetime %g days):\n"
                  "  %.1f B/s per node (%.2f KBps)\n",
                  opt.files, opt.fp, static_cast<unsigned long long>(r.m), r.k, r.bits_per_entry,
                  r.bits_per_entry / 8.0, r.memory_bytes / 1e6, r.memory_bytes, r.expected_fp, opt.nodes, bpe,
                  opt.fanout, opt.period_secs, opt.lifetime_days, r.traffic_bytes_per_sec,
                  r.traffic_bytes_per_sec / 1e3);
    out << buf;
    return int{kOk};
  });
}

int cmd_workload_curve(const WorkloadCurveOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = workload::served_fraction_curve(parse_number_list(opt.alphas), opt.files,
                                                      parse_number_list(opt.coverage_grid));
    if (opt.out.empty()) {
      workload::write_curve_csv(out, rows);
      return int{kOk};
    }
    std::ostringstream csv;
    workload::write_curve_csv(csv, rows);
    if (!write_file(opt.out, csv.str(), err)) return int{kRuntimeFailure};
    out << "wrote " << rows.size() << " rows to " << opt.out << '\n';
    return int{kOk};
  });
}

int cmd_build_overlay(const BuildOverlayOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    topology::OverlaySpec spec;
    spec.n_clusters = opt.clusters;
    spec.nodes_per_cluster = opt.size;
    spec.intra_degree = opt.degree;
    spec.wiring = topology::parse_wiring(opt.wiring);
    spec.wiring_param = opt.param;
    spec.gateways_per_cluster = opt.gateways;
    spec.seed = opt.seed;
    const auto overlay = topology::build_overlay(spec);

    std::ostringstream edges, clusters;
    topology::write_overlay_edges(edges, overlay);
    topology::write_overlay_clusters(clusters, overlay);
    if (!write_file(opt.out, edges.str(), err) || !write_file(opt.out + ".clusters.csv", clusters.str(), err)) {
      return int{kRuntimeFailure};
    }
    out << overlay.node_count() << " nodes, " << overlay.graph.edge_count() << " edges ("
        << overlay.inter_edge_count() << " inter-cluster), wrote " << opt.out << " and " << opt.out
        << ".clusters.csv\n";
    return int{kOk};
  });
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::ifstream in(opt.config);
    if (!in) {
      err << "error: cannot read config " << opt.config << '\n';
      return int{kUsageError};
    }
    const auto cfg = sim::parse_sim_config(in);
    sim::Simulator simulator(cfg);
    const auto m = simulator.run();
    if (!write_file(opt.out, sim::metrics_to_json(m) + "\n", err)) return int{kRuntimeFailure};
    if (!opt.per_round.empty()) {
      std::ostringstream csv;
      sim::write_round_csv(csv, simulator.round_stats());
      if (!write_file(opt.per_round, csv.str(), err)) return int{kRuntimeFailure};
    }
    const double total = m.requests_total ? static_cast<double>(m.requests_total) : 1.0;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%llu requests: %.1f%% local, %.1f%% remote, %llu not found, %llu unresolved; %.0f gossip B/node/round\n",
                  static_cast<unsigned long long>(m.requests_total), 100.0 * m.served_local / total,
                  100.0 * m.served_remote / total, static_cast<unsigned long long>(m.not_found),
                  static_cast<unsigned long long>(m.unresolved), m.gossip_bytes_per_node_per_round);
    out << buf;
    return int{kOk};
  });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locate files in clustered peer-to-peer overlays: trace analysis, sizing and simulation", "swloc"};
  app.require_subcommand(1, 1);

  AnalyzeTraceOptions at;
  auto* analyze = app.add_subcommand("analyze-trace", "Sharing-graph metrics per time window");
  analyze->add_option("--trace", at.trace, "CSV trace: user_id,file_id,timestamp")->required();
  analyze->add_option("--windows", at.windows, "Window lengths, e.g. 1d,2d,7d")->capture_default_str();
  analyze->add_option("--samples", at.samples, "Random baseline samples per window")->capture_default_str();
  analyze->add_option("--seed", at.seed)->capture_default_str();
  analyze->add_option("--out", at.out, "JSON report path")->capture_default_str();

  EstimateOptions es;
  double bytes_per_entry = 0.0;
  auto* estimate = app.add_subcommand("estimate", "Filter memory and gossip traffic estimates");
  estimate->add_option("--files", es.files)->capture_default_str();
  estimate->add_option("--nodes", es.nodes)->capture_default_str();
  estimate->add_option("--fp", es.fp, "Target false-positive rate")->capture_default_str();
  estimate->add_option("--lifetime-days", es.lifetime_days)->capture_default_str();
  estimate->add_option("--fanout", es.fanout)->capture_default_str();
  estimate->add_option("--period-secs", es.period_secs)->capture_default_str();
  auto* bpe = estimate->add_option("--bytes-per-entry", bytes_per_entry, "Override the sized filter's density");

  WorkloadCurveOptions wc;
  auto* curve = app.add_subcommand("workload-curve", "Fraction of requests served locally under Zipf");
  curve->add_option("--alpha", wc.alphas, "Comma-separated exponents")->capture_default_str();
  curve->add_option("--files", wc.files)->capture_default_str();
  curve->add_option("--coverage-grid", wc.coverage_grid)->capture_default_str();
  curve->add_option("--out", wc.out, "CSV path (default: standard output)");

  BuildOverlayOptions bo;
  auto* overlay = app.add_subcommand("build-overlay", "Generate a clustered overlay");
  overlay->add_option("--clusters", bo.clusters)->capture_default_str();
  overlay->add_option("--size", bo.size, "Nodes per cluster")->capture_default_str();
  overlay->add_option("--degree", bo.degree, "Intra-cluster degree")->capture_default_str();
  overlay->add_option("--wiring", bo.wiring, "random, gateway or rewire")->capture_default_str();
  overlay->add_option("--param", bo.param, "Wiring parameter")->capture_default_str();
  overlay->add_option("--gateways", bo.gateways, "Gateways per cluster (gateway wiring)")->capture_default_str();
  overlay->add_option("--seed", bo.seed)->capture_default_str();
  overlay->add_option("--out", bo.out, "Edge list path; clusters go to <out>.clusters.csv")->capture_default_str();

  SimulateOptions so;
  auto* simulate = app.add_subcommand("simulate", "Run the gossip and search simulator");
  simulate->add_option("--config", so.config, "key = value config file")->required();
  simulate->add_option("--out", so.out, "Metrics JSON path")->capture_default_str();
  simulate->add_option("--per-round", so.per_round, "Optional per-round CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int{kOk} : int{kUsageError};
  }

  if (*analyze) return cmd_analyze_trace(at, out, err);
  if (*estimate) {
    if (*bpe) es.bytes_per_entry = bytes_per_entry;
    return cmd_estimate(es, out, err);
  }
  if (*curve) return cmd_workload_curve(wc, out, err);
  if (*overlay) return cmd_build_overlay(bo, out, err);
  return cmd_simulate(so, out, err);
}

}  // namespace swloc::cli
