#include <charconv>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "swloc/error.hpp"
#include "swloc/sim.hpp"

namespace swloc::sim {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(key, "config key '" + key + "': cannot parse '" + std::string(value) + "'");
  }
  return out;
}

}  // namespace

SimConfig parse_sim_config(std::istream& in) {
  SimConfig cfg;
  std::optional<std::uint64_t> overlay_seed;
  std::optional<std::uint64_t> workload_seed;

  using Setter = std::function<void(const std::string&, std::string_view)>;
  auto u64 = [](auto& field) {
    return Setter([&field](const std::string& k, std::string_view v) {
      field = parse_number<std::remove_reference_t<decltype(field)>>(k, v);
    });
  };
  auto real = [](double& field) {
    return Setter([&field](const std::string& k, std::string_view v) { field = parse_number<double>(k, v); });
  };

  const std::map<std::string, Setter, std::less<>> setters = {
      {"seed", u64(cfg.seed)},
      {"rounds", u64(cfg.rounds)},
      {"warmup_rounds", u64(cfg.warmup_rounds)},
      {"strategy",
       [&cfg](const std::string& k, std::string_view v) {
         try {
           cfg.strategy = parse_strategy(std::string(v));
         } catch (const ParameterError& e) {
           throw ConfigError(k, "config key '" + k + "': " + e.what());
         }
       }},
      {"overlay.clusters", u64(cfg.overlay.n_clusters)},
      {"overlay.size", u64(cfg.overlay.nodes_per_cluster)},
      {"overlay.degree", u64(cfg.overlay.intra_degree)},
      {"overlay.wiring",
       [&cfg](const std::string& k, std::string_view v) {
         try {
           cfg.overlay.wiring = topology::parse_wiring(std::string(v));
         } catch (const ParameterError& e) {
           throw ConfigError(k, "config key '" + k + "': " + e.what());
         }
       }},
      {"overlay.param", real(cfg.overlay.wiring_param)},
      {"overlay.gateways", u64(cfg.overlay.gateways_per_cluster)},
      {"overlay.seed",
       [&overlay_seed](const std::string& k, std::string_view v) { overlay_seed = parse_number<std::uint64_t>(k, v); }},
      {"gossip.fanout", u64(cfg.gossip.fanout)},
      {"gossip.period", u64(cfg.gossip.gossip_period)},
      {"gossip.node_ttl", u64(cfg.gossip.node_ttl)},
      {"gossip.file_ttl", u64(cfg.gossip.file_ttl)},
      {"gossip.full_refresh_period", u64(cfg.gossip.full_refresh_period)},
      {"bloom.m", u64(cfg.bloom.m)},
      {"bloom.k", u64(cfg.bloom.k)},
      {"bloom.bits_per_entry", real(cfg.bits_per_entry)},
      {"workload.alpha", real(cfg.requests.zipf.alpha)},
      {"workload.files", u64(cfg.requests.zipf.n_files)},
      {"workload.seed",
       [&workload_seed](const std::string& k, std::string_view v) {
         workload_seed = parse_number<std::uint64_t>(k, v);
       }},
      {"workload.coverage", real(cfg.requests.coverage)},
      {"workload.remote_presence", real(cfg.requests.remote_presence)},
      {"workload.repeat_probability", real(cfg.requests.repeat_probability)},
      {"workload.request_probability", real(cfg.requests.request_probability)},
      {"churn.join_probability", real(cfg.churn.join_probability)},
      {"churn.leave_probability", real(cfg.churn.leave_probability)},
  };

  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    const std::string_view body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      const std::string key(body);
      throw ConfigError(key, "config line " + std::to_string(lineno) + ": expected 'key = value', got '" + key + "'");
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string_view value = trim(body.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(key, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(key, "config key '" + key + "' given twice");
    it->second(key, value);
  }

  cfg.overlay.seed = overlay_seed.value_or(cfg.seed);
  cfg.requests.zipf.seed = workload_seed.value_or(cfg.seed);
  if (seen.count("bloom.m") != seen.count("bloom.k")) {
    throw ConfigError(seen.count("bloom.m") ? "bloom.k" : "bloom.m", "config: bloom.m and bloom.k must be given together");
  }
  try {
    cfg.validate();
  } catch (const ParameterError& e) {
    std::string msg = e.what();
    std::string key = msg.substr(0, msg.find(' '));
    if (!key.empty() && key.back() == ':') key.pop_back();
    throw ConfigError(key, "config: " + msg);
  }
  return cfg;
}

}  // namespace swloc::sim
