#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "swloc/bloom.hpp"
#include "swloc/random.hpp"
#include "swloc/topology.hpp"
#include "swloc/workload.hpp"

namespace swloc::sim {

using NodeId = std::uint32_t;

enum class ForwardStrategy { unicast_random, gateway_multicast, flood };

std::string to_string(ForwardStrategy s);
ForwardStrategy parse_strategy(const std::string& name);

struct GossipConfig {
  std::uint32_t fanout = 3;
  std::uint32_t gossip_period = 1;        ///< rounds between emissions
  std::uint32_t node_ttl = 20;            ///< rounds before a silent peer is dropped
  std::uint32_t file_ttl = 50;            ///< rounds before an unrefreshed contribution is dropped
  std::uint32_t full_refresh_period = 10; ///< rounds between full re-advertisements

  void validate() const;
};

struct ChurnConfig {
  double join_probability = 0.0;   ///< per round, for a departed node
  double leave_probability = 0.0;  ///< per round, for a live node
};

/// Request model. Every cluster ranks its own catalog of n_files files by
/// Zipf popularity; the top floor(coverage * n_files) ranks are stored inside
/// the cluster, each remaining rank is stored in some other cluster with
/// probability remote_presence and nowhere otherwise.
struct RequestConfig {
  workload::ZipfWorkload zipf{1.0, 1000, 0};
  double coverage = 0.1;
  double remote_presence = 1.0;
  double repeat_probability = 0.2;   ///< re-request the previous file (time locality)
  double request_probability = 1.0;  ///< per live node per round
};

struct SimConfig {
  topology::OverlaySpec overlay;
  GossipConfig gossip;
  /// m == 0 means size per cluster at bits_per_entry with optimal k.
  bloom::BloomParams bloom;
  double bits_per_entry = 16.0;
  RequestConfig requests;
  ChurnConfig churn;
  ForwardStrategy strategy = ForwardStrategy::unicast_random;
  std::uint64_t rounds = 200;
  std::uint64_t warmup_rounds = 20;  ///< no requests before this round
  std::uint64_t seed = 2002;

  void validate() const;
};

struct SimMetrics {
  std::uint64_t rounds = 0;
  std::uint64_t nodes = 0;
  std::uint64_t requests_total = 0;
  std::uint64_t served_local = 0;
  std::uint64_t served_remote = 0;
  std::uint64_t not_found = 0;   ///< file absent from every live node
  std::uint64_t unresolved = 0;  ///< file existed but the search missed it
  std::map<std::uint64_t, std::uint64_t> hops_histogram;  ///< remote clusters visited -> requests
  std::uint64_t false_positive_lookups = 0;
  std::uint64_t false_negative_lookups = 0;
  std::uint64_t negative_lookups = 0;  ///< lookups of files absent from the consulted cluster
  std::uint64_t malformed_payloads = 0;
  std::uint64_t gossip_messages = 0;
  std::uint64_t gossip_bytes_total = 0;
  double gossip_bytes_per_node_per_round = 0.0;
  std::uint64_t clusters_visited_max = 0;

  friend bool operator==(const SimMetrics&, const SimMetrics&) = default;
};

/// Per-round counters for the optional CSV `round,served_local,fp,fn,bytes`.
struct RoundStats {
  std::uint64_t round = 0;
  std::uint64_t served_local = 0;
  std::uint64_t false_positives = 0;
  std::uint64_t false_negatives = 0;
  std::uint64_t bytes = 0;
};

enum class EventKind { gossip_emit, gossip_receive, request, join, leave, expiry, advertise };

struct Event {
  std::uint64_t round = 0;
  EventKind kind = EventKind::advertise;
  NodeId node = 0;
  NodeId peer = 0;          ///< gossip target/sender; unused otherwise
  std::uint64_t value = 0;  ///< bytes for gossip, hops for requests, entries removed for expiry
};

struct ContributorEntry {
  std::uint64_t epoch = 0;  ///< round of the advertisement this entry reflects
  bloom::BloomFilter filter;
};

/// One encoded payload sent to every target.
struct Emission {
  std::vector<NodeId> targets;
  std::vector<std::uint8_t> payload;

  bool empty() const noexcept { return targets.empty(); }
};

/// One node's soft state: local files, membership view and the per-contributor
/// filters whose union answers lookups for the whole cluster.
class NodeState {
 public:
  NodeState(NodeId id, std::uint32_t cluster, const bloom::BloomParams& params, const GossipConfig& gossip);

  NodeId id() const noexcept { return id_; }
  std::uint32_t cluster() const noexcept { return cluster_; }

  void add_local_file(const std::string& file, std::uint64_t round);
  bool holds(const std::string& file) const { return local_files_.count(file) != 0; }
  const std::map<std::string, std::uint64_t>& local_files() const noexcept { return local_files_; }

  /// Starts a fresh epoch for this node's own contribution; the next
  /// emission carries every live entry.
  void advertise(std::uint64_t round);

  void add_peer(NodeId peer, std::uint64_t last_heard);
  const std::map<NodeId, std::uint64_t>& membership() const noexcept { return membership_; }
  const std::map<NodeId, ContributorEntry>& knowledge() const noexcept { return knowledge_; }
  const bloom::BloomFilter& aggregate() const noexcept { return aggregate_; }

  /// Picks min(fanout, peers) distinct peers and encodes one payload for
  /// them. Returns an empty emission (state untouched) if there are no peers.
  Emission gossip_round(std::uint64_t round, Rng& rng);

  /// Merges a payload. Returns false (state untouched) if it is malformed.
  bool gossip_receive(std::span<const std::uint8_t> payload, std::uint64_t round);

  /// Drops silent peers and stale contributions; rebuilds the aggregate if
  /// anything was removed. Returns the number of entries removed.
  std::size_t expiry_sweep(std::uint64_t round);

  /// Clears everything except local files (node departure + restart).
  void reset(std::uint64_t round);

  bool lookup(const std::string& file) const { return aggregate_.contains(file); }

 private:
  void rebuild_aggregate();

  NodeId id_;
  std::uint32_t cluster_;
  bloom::BloomParams params_;
  GossipConfig gossip_;
  std::map<std::string, std::uint64_t> local_files_;  ///< file -> advertise round
  std::map<NodeId, std::uint64_t> membership_;        ///< peer -> last heard
  std::map<NodeId, ContributorEntry> knowledge_;      ///< includes this node
  bloom::BloomFilter aggregate_;
  std::set<NodeId> pending_;
  bool full_due_ = true;
  bool dirty_ = false;
};

/// Gossip payload wire format (little-endian u64 throughout):
///   magic, sender, round, n_members, n_members x (peer, last_heard),
///   n_records, n_records x (contributor, epoch, byte_len, serialized filter)
inline constexpr std::uint64_t kPayloadMagic = 0x315053534f475753ULL;  // "SWGOSSP1"

struct DecodedPayload {
  NodeId sender = 0;
  std::uint64_t round = 0;
  std::vector<std::pair<NodeId, std::uint64_t>> members;
  std::vector<std::pair<NodeId, ContributorEntry>> records;
};

/// Throws FormatError on malformed input.
DecodedPayload decode_payload(std::span<const std::uint8_t> bytes);

enum class Outcome { local, remote, not_found, unresolved };
std::string to_string(Outcome o);

struct Resolution {
  Outcome outcome = Outcome::not_found;
  std::size_t hops = 0;              ///< remote clusters visited
  std::size_t clusters_visited = 1;  ///< including the origin cluster
  std::uint32_t origin_cluster = 0;
  std::optional<std::uint32_t> found_cluster;
  std::uint64_t false_positives = 0;
  std::uint64_t false_negatives = 0;
  std::uint64_t negative_lookups = 0;
};

/// Round-based simulator. Each round runs advertise, gossip, expiry,
/// requests and churn in that order; output is a pure function of the config.
class Simulator {
 public:
  explicit Simulator(SimConfig config);
  Simulator(SimConfig config, topology::Overlay overlay);

  void step();
  SimMetrics run();

  std::uint64_t round() const noexcept { return round_; }
  const SimConfig& config() const noexcept { return config_; }
  const topology::Overlay& overlay() const noexcept { return overlay_; }
  const bloom::BloomParams& bloom_params() const noexcept { return params_; }
  NodeState& node(NodeId v) { return nodes_.at(v); }
  const NodeState& node(NodeId v) const { return nodes_.at(v); }
  bool alive(NodeId v) const { return alive_.at(v) != 0; }
  SimMetrics metrics() const;
  const std::vector<RoundStats>& round_stats() const noexcept { return per_round_; }

  /// File id of rank `rank` in `cluster`'s catalog.
  static std::string file_name(std::uint32_t cluster, std::uint64_t rank);
  /// Live holder of `file`, if any.
  std::optional<NodeId> holder(const std::string& file) const;
  bool present_in_cluster(const std::string& file, std::uint32_t cluster) const;
  /// Distinct files stored in `cluster` (ignoring liveness).
  std::size_t cluster_file_count(std::uint32_t cluster) const { return cluster_files_.at(cluster); }
  std::uint64_t local_ranks() const noexcept { return local_ranks_; }

  /// Resolves a request without recording metrics.
  Resolution resolve(NodeId requester, const std::string& file, ForwardStrategy strategy);

  /// Placement hook for tests: stores `file` at `holder`.
  void place_file(const std::string& file, NodeId holder);

  void set_observer(std::function<void(const Event&)> observer) { observer_ = std::move(observer); }

 private:
  struct Link {
    NodeId from;
    NodeId to;
  };

  void init();
  void emit(const Event& e) {
    if (observer_) observer_(e);
  }
  bool lookup_at(NodeId entry, const std::string& file, Resolution& r) const;
  void advertise_phase();
  void gossip_phase();
  void expiry_phase();
  void request_phase();
  void churn_phase();
  void record(const Resolution& r);
  void bootstrap_membership(NodeId v, std::uint64_t round);

  SimConfig config_;
  topology::Overlay overlay_;
  bloom::BloomParams params_;
  std::vector<NodeState> nodes_;
  std::vector<char> alive_;
  std::vector<std::uint64_t> joined_at_;
  std::vector<std::vector<Link>> cluster_links_;  ///< inter-cluster links leaving each cluster
  std::unordered_map<std::string, NodeId> holder_;
  std::vector<std::size_t> cluster_files_;
  std::uint64_t local_ranks_ = 0;
  std::optional<workload::ZipfSampler> sampler_;
  std::vector<std::optional<std::string>> previous_request_;

  Rng gossip_rng_;
  Rng request_rng_;
  Rng forward_rng_;
  Rng churn_rng_;

  std::uint64_t round_ = 0;
  std::uint64_t alive_node_rounds_ = 0;
  SimMetrics metrics_;
  std::vector<RoundStats> per_round_;
  std::function<void(const Event&)> observer_;
};

SimMetrics sim_run(const SimConfig& config);

/// Bytes/s each node spends re-advertising its share of the cluster index:
/// (files_per_cluster / nodes_per_cluster) * bytes_per_entry * fanout /
/// gossip_period_seconds. file_lifetime_seconds sets the refresh cycle the
/// estimate assumes and does not enter the closed form.
double estimate_traffic(double files_per_cluster, double nodes_per_cluster, double file_lifetime_seconds,
                        double bytes_per_entry, double fanout, double gossip_period_seconds);

/// SimMetrics as a JSON object (stable key order).
std::string metrics_to_json(const SimMetrics& m);
void write_round_csv(std::ostream& out, const std::vector<RoundStats>& rows);

/// Key-value config text: `key = value` per line, '#' comments. Throws
/// ConfigError naming the offending key.
SimConfig parse_sim_config(std::istream& in);

}  // namespace swloc::sim
