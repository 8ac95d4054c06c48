#include "swloc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>

#include "bytes.hpp"
#include "json.hpp"
#include "swloc/error.hpp"

namespace swloc::sim {

namespace {

constexpr std::uint64_t kPlacementStream = 0x706c6163;
constexpr std::uint64_t kGossipStream = 0x676f7373;
constexpr std::uint64_t kRequestStream = 0x72657175;
constexpr std::uint64_t kForwardStream = 0x666f7277;
constexpr std::uint64_t kChurnStream = 0x63687572;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

std::string to_string(ForwardStrategy s) {
  switch (s) {
    case ForwardStrategy::unicast_random: return "unicast_random";
    case ForwardStrategy::gateway_multicast: return "gateway_multicast";
    case ForwardStrategy::flood: return "flood";
  }
  return "unicast_random";
}

ForwardStrategy parse_strategy(const std::string& name) {
  if (name == "unicast_random") return ForwardStrategy::unicast_random;
  if (name == "gateway_multicast") return ForwardStrategy::gateway_multicast;
  if (name == "flood") return ForwardStrategy::flood;
  throw ParameterError("unknown forward strategy '" + name + "'");
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::local: return "local";
    case Outcome::remote: return "remote";
    case Outcome::not_found: return "not_found";
    case Outcome::unresolved: return "unresolved";
  }
  return "not_found";
}

void GossipConfig::validate() const {
  if (fanout == 0) throw ParameterError("gossip.fanout must be at least 1");
  if (gossip_period == 0) throw ParameterError("gossip.period must be at least 1");
  if (node_ttl == 0) throw ParameterError("gossip.node_ttl must be at least 1");
  if (full_refresh_period == 0) throw ParameterError("gossip.full_refresh_period must be at least 1");
  if (file_ttl <= full_refresh_period) {
    throw ParameterError("gossip.file_ttl must exceed gossip.full_refresh_period");
  }
}

void SimConfig::validate() const {
  overlay.validate();
  gossip.validate();
  if (bloom.m != 0) bloom.validate();
  if (!(bits_per_entry > 0.0) || !std::isfinite(bits_per_entry)) {
    throw ParameterError("bloom.bits_per_entry must be positive");
  }
  requests.zipf.validate();
  check_probability(requests.coverage, "workload.coverage");
  check_probability(requests.remote_presence, "workload.remote_presence");
  check_probability(requests.repeat_probability, "workload.repeat_probability");
  check_probability(requests.request_probability, "workload.request_probability");
  check_probability(churn.join_probability, "churn.join_probability");
  check_probability(churn.leave_probability, "churn.leave_probability");
  if (rounds == 0) throw ParameterError("rounds must be at least 1");
}

// ---------------------------------------------------------------------------
// NodeState

NodeState::NodeState(NodeId id, std::uint32_t cluster, const bloom::BloomParams& params,
                     const GossipConfig& gossip)
    : id_(id), cluster_(cluster), params_(params), gossip_(gossip), aggregate_(params) {
  knowledge_.emplace(id_, ContributorEntry{0, bloom::BloomFilter(params_)});
  pending_.insert(id_);
}

void NodeState::add_local_file(const std::string& file, std::uint64_t round) {
  if (!local_files_.emplace(file, round).second) return;
  knowledge_.at(id_).filter.insert(file);
  aggregate_.insert(file);
  pending_.insert(id_);
}

void NodeState::advertise(std::uint64_t round) {
  auto& self = knowledge_.at(id_);
  self.epoch = round;
  for (auto& [file, ts] : local_files_) ts = round;
  pending_.insert(id_);
  full_due_ = true;
}

void NodeState::add_peer(NodeId peer, std::uint64_t last_heard) {
  if (peer == id_) return;
  auto [it, inserted] = membership_.emplace(peer, last_heard);
  if (!inserted) it->second = std::max(it->second, last_heard);
}

Emission NodeState::gossip_round(std::uint64_t round, Rng& rng) {
  Emission out;
  if (membership_.empty()) return out;
  std::vector<NodeId> peers;
  peers.reserve(membership_.size());
  for (const auto& [peer, heard] : membership_) peers.push_back(peer);

  const std::size_t count = std::min<std::size_t>(gossip_.fanout, peers.size());
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(peers[i], peers[i + rng.below(peers.size() - i)]);
  }
  peers.resize(count);
  out.targets = std::move(peers);

  std::vector<const std::pair<const NodeId, ContributorEntry>*> records;
  if (full_due_) {
    for (const auto& entry : knowledge_) records.push_back(&entry);
  } else {
    for (NodeId c : pending_) {
      auto it = knowledge_.find(c);
      if (it != knowledge_.end()) records.push_back(&*it);
    }
  }
  std::size_t size = 8 * 5 + 16 * (membership_.size() + 1);
  for (const auto* rec : records) size += 24 + rec->second.filter.serialized_size();

  auto& payload = out.payload;
  payload.reserve(size);
  detail::put_u64(payload, kPayloadMagic);
  detail::put_u64(payload, id_);
  detail::put_u64(payload, round);
  detail::put_u64(payload, membership_.size() + 1);
  detail::put_u64(payload, id_);
  detail::put_u64(payload, round);
  for (const auto& [peer, heard] : membership_) {
    detail::put_u64(payload, peer);
    detail::put_u64(payload, heard);
  }
  detail::put_u64(payload, records.size());
  for (const auto* rec : records) {
    detail::put_u64(payload, rec->first);
    detail::put_u64(payload, rec->second.epoch);
    detail::put_u64(payload, rec->second.filter.serialized_size());
    rec->second.filter.serialize_into(payload);
  }
  pending_.clear();
  full_due_ = false;
  return out;
}

namespace {

struct RawRecord {
  NodeId contributor = 0;
  std::uint64_t epoch = 0;
  std::span<const std::uint8_t> bytes;
  bloom::FilterHeader header;
};

struct RawPayload {
  NodeId sender = 0;
  std::uint64_t round = 0;
  std::vector<std::pair<NodeId, std::uint64_t>> members;
  std::vector<RawRecord> records;
};

// Validates the whole payload, filters included, without copying any bits.
RawPayload parse_payload(std::span<const std::uint8_t> bytes) {
  detail::ByteReader in(bytes, "gossip payload");
  if (in.u64() != kPayloadMagic) throw FormatError("gossip payload: bad magic");
  RawPayload out;
  out.sender = static_cast<NodeId>(in.u64());
  out.round = in.u64();
  const std::uint64_t members = in.u64();
  if (members > in.remaining() / 16) throw FormatError("gossip payload: member count exceeds payload");
  out.members.reserve(static_cast<std::size_t>(members));
  for (std::uint64_t i = 0; i < members; ++i) {
    const auto peer = static_cast<NodeId>(in.u64());
    out.members.emplace_back(peer, in.u64());
  }
  const std::uint64_t records = in.u64();
  if (records > in.remaining() / 24) throw FormatError("gossip payload: record count exceeds payload");
  out.records.reserve(static_cast<std::size_t>(records));
  for (std::uint64_t i = 0; i < records; ++i) {
    RawRecord r;
    r.contributor = static_cast<NodeId>(in.u64());
    r.epoch = in.u64();
    const std::uint64_t len = in.u64();
    if (len > in.remaining()) throw FormatError("gossip payload: truncated filter");
    r.bytes = in.take(static_cast<std::size_t>(len));
    r.header = bloom::BloomFilter::read_header(r.bytes);
    out.records.push_back(r);
  }
  if (in.remaining() != 0) throw FormatError("gossip payload: trailing bytes");
  return out;
}

}  // namespace

DecodedPayload decode_payload(std::span<const std::uint8_t> bytes) {
  RawPayload raw = parse_payload(bytes);
  DecodedPayload out;
  out.sender = raw.sender;
  out.round = raw.round;
  out.members = std::move(raw.members);
  for (const auto& r : raw.records) {
    out.records.emplace_back(r.contributor, ContributorEntry{r.epoch, bloom::BloomFilter::deserialize(r.bytes)});
  }
  return out;
}

bool NodeState::gossip_receive(std::span<const std::uint8_t> payload, std::uint64_t round) {
  RawPayload msg;
  try {
    msg = parse_payload(payload);
  } catch (const FormatError&) {
    return false;
  }
  for (const auto& r : msg.records) {
    if (!r.header.params.compatible_with(params_)) return false;
  }

  if (msg.sender != id_) add_peer(msg.sender, round);
  for (const auto& [peer, heard] : msg.members) {
    if (peer == id_ || heard + gossip_.node_ttl <= round) continue;
    add_peer(peer, std::min(heard, round));
  }

  // Only the owner inserts into its filter, so copies of one epoch are
  // snapshots ordered by insert count; the larger one supersedes.
  for (const auto& r : msg.records) {
    if (r.contributor == id_ || r.epoch + gossip_.file_ttl <= round) continue;
    auto it = knowledge_.find(r.contributor);
    if (it != knowledge_.end()) {
      const auto& known = it->second;
      const bool newer = r.epoch > known.epoch ||
                         (r.epoch == known.epoch && r.header.inserted > known.filter.inserted_count());
      if (!newer) continue;
    }
    auto filter = bloom::BloomFilter::deserialize(r.bytes);
    aggregate_.merge(filter);
    if (it == knowledge_.end()) {
      knowledge_.emplace(r.contributor, ContributorEntry{r.epoch, std::move(filter)});
    } else {
      // Bits the replacement no longer carries leave the aggregate at the
      // next sweep.
      if (!filter.covers(it->second.filter)) dirty_ = true;
      it->second = ContributorEntry{r.epoch, std::move(filter)};
    }
    pending_.insert(r.contributor);
  }
  return true;
}

std::size_t NodeState::expiry_sweep(std::uint64_t round) {
  std::size_t removed = 0;
  for (auto it = membership_.begin(); it != membership_.end();) {
    if (it->second + gossip_.node_ttl <= round) {
      it = membership_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  for (auto it = knowledge_.begin(); it != knowledge_.end();) {
    if (it->first != id_ && it->second.epoch + gossip_.file_ttl <= round) {
      pending_.erase(it->first);
      it = knowledge_.erase(it);
      dirty_ = true;
      ++removed;
    } else {
      ++it;
    }
  }
  if (dirty_) rebuild_aggregate();
  return removed;
}

void NodeState::rebuild_aggregate() {
  // Filters cannot delete, so the aggregate is re-derived from live entries.
  bloom::BloomFilter fresh(params_);
  for (const auto& [contributor, entry] : knowledge_) fresh.merge(entry.filter);
  aggregate_ = std::move(fresh);
  dirty_ = false;
}

void NodeState::reset(std::uint64_t round) {
  membership_.clear();
  bloom::BloomFilter own(params_);
  for (auto& [file, ts] : local_files_) {
    own.insert(file);
    ts = round;
  }
  knowledge_.clear();
  knowledge_.emplace(id_, ContributorEntry{round, own});
  aggregate_ = std::move(own);
  pending_ = {id_};
  full_due_ = true;
  dirty_ = false;
}

// ---------------------------------------------------------------------------
// Simulator

Simulator::Simulator(SimConfig config)
    : config_(std::move(config)),
      gossip_rng_(derive_seed(config_.seed, kGossipStream)),
      request_rng_(derive_seed(config_.seed, kRequestStream)),
      forward_rng_(derive_seed(config_.seed, kForwardStream)),
      churn_rng_(derive_seed(config_.seed, kChurnStream)) {
  config_.validate();
  overlay_ = topology::build_overlay(config_.overlay);
  init();
}

Simulator::Simulator(SimConfig config, topology::Overlay overlay)
    : config_(std::move(config)),
      overlay_(std::move(overlay)),
      gossip_rng_(derive_seed(config_.seed, kGossipStream)),
      request_rng_(derive_seed(config_.seed, kRequestStream)),
      forward_rng_(derive_seed(config_.seed, kForwardStream)),
      churn_rng_(derive_seed(config_.seed, kChurnStream)) {
  config_.validate();
  init();
}

std::string Simulator::file_name(std::uint32_t cluster, std::uint64_t rank) {
  return "c" + std::to_string(cluster) + ":r" + std::to_string(rank);
}

void Simulator::init() {
  const std::size_t n = overlay_.node_count();
  const std::size_t clusters = overlay_.n_clusters;
  const std::size_t g = overlay_.nodes_per_cluster;
  if (n == 0) throw ParameterError("simulator: empty overlay");
  const auto& req = config_.requests;

  // Ground-truth placement.
  Rng place(derive_seed(config_.seed, kPlacementStream));
  local_ranks_ = workload::ZipfPrefix(0.0, req.zipf.n_files).covered(req.coverage);
  cluster_files_.assign(clusters, 0);
  std::vector<std::pair<std::string, NodeId>> placement;
  for (std::uint32_t c = 0; c < clusters; ++c) {
    for (std::uint64_t r = 1; r <= req.zipf.n_files; ++r) {
      std::size_t home = c;
      if (r > local_ranks_) {
        if (clusters < 2 || !place.bernoulli(req.remote_presence)) continue;
        home = (c + 1 + place.below(clusters - 1)) % clusters;
      }
      const auto holder = static_cast<NodeId>(home * g + place.below(g));
      placement.emplace_back(file_name(c, r), holder);
      ++cluster_files_[home];
    }
  }

  params_ = config_.bloom;
  if (params_.m == 0) {
    const auto most = std::max<std::size_t>(1, *std::max_element(cluster_files_.begin(), cluster_files_.end()));
    const auto bits = static_cast<std::uint64_t>(std::ceil(config_.bits_per_entry * static_cast<double>(most)));
    params_.m = std::max<std::uint64_t>(8, (bits + 7) / 8 * 8);
    params_.k = bloom::optimal_k(params_.m, most);
    params_.expected_n = most;
  }

  nodes_.clear();
  nodes_.reserve(n);
  for (NodeId v = 0; v < n; ++v) nodes_.emplace_back(v, overlay_.cluster_of[v], params_, config_.gossip);
  alive_.assign(n, 1);
  joined_at_.assign(n, 0);
  previous_request_.assign(n, std::nullopt);
  for (NodeId v = 0; v < n; ++v) bootstrap_membership(v, 0);

  holder_.clear();
  for (auto& [file, holder] : placement) place_file(file, holder);

  cluster_links_.assign(clusters, {});
  for (auto [u, v] : overlay_.graph.edges()) {
    if (!overlay_.is_inter(u, v)) continue;
    cluster_links_[overlay_.cluster_of[u]].push_back({u, v});
    cluster_links_[overlay_.cluster_of[v]].push_back({v, u});
  }

  sampler_.emplace(req.zipf);
  metrics_ = {};
  metrics_.nodes = n;
  per_round_.clear();
  round_ = 0;
  alive_node_rounds_ = 0;
}

void Simulator::place_file(const std::string& file, NodeId holder) {
  holder_[file] = holder;
  nodes_.at(holder).add_local_file(file, round_);
}

void Simulator::bootstrap_membership(NodeId v, std::uint64_t round) {
  for (auto w : overlay_.graph.neighbors(v)) {
    if (!overlay_.is_inter(v, w)) nodes_[v].add_peer(w, round);
  }
}

std::optional<NodeId> Simulator::holder(const std::string& file) const {
  auto it = holder_.find(file);
  if (it == holder_.end() || !alive_[it->second]) return std::nullopt;
  return it->second;
}

bool Simulator::present_in_cluster(const std::string& file, std::uint32_t cluster) const {
  const auto h = holder(file);
  return h && overlay_.cluster_of[*h] == cluster;
}

bool Simulator::lookup_at(NodeId entry, const std::string& file, Resolution& r) const {
  const bool present = present_in_cluster(file, overlay_.cluster_of[entry]);
  const bool hit = nodes_[entry].holds(file) || nodes_[entry].lookup(file);
  if (hit && present) return true;
  if (hit) {
    ++r.false_positives;
    ++r.negative_lookups;
  } else if (present) {
    ++r.false_negatives;
  } else {
    ++r.negative_lookups;
  }
  return false;
}

Resolution Simulator::resolve(NodeId requester, const std::string& file, ForwardStrategy strategy) {
  Resolution r;
  const std::uint32_t origin = overlay_.cluster_of.at(requester);
  r.origin_cluster = origin;
  if (nodes_[requester].holds(file) || lookup_at(requester, file, r)) {
    r.outcome = Outcome::local;
    r.found_cluster = origin;
    return r;
  }

  std::vector<char> visited(overlay_.n_clusters, 0);
  visited[origin] = 1;
  std::size_t count = 1;
  std::vector<Link> candidates;
  auto open_links = [&](std::uint32_t cluster) {
    candidates.clear();
    for (const auto& l : cluster_links_[cluster]) {
      if (alive_[l.from] && alive_[l.to] && !visited[overlay_.cluster_of[l.to]]) candidates.push_back(l);
    }
  };
  auto visit = [&](const Link& l) {
    const auto c = overlay_.cluster_of[l.to];
    visited[c] = 1;
    ++count;
    const bool hit = lookup_at(l.to, file, r);
    if (hit && !r.found_cluster) r.found_cluster = c;
    return hit;
  };

  switch (strategy) {
    case ForwardStrategy::unicast_random: {
      // Random depth-first walk: one link per hop, backtracking when every
      // neighbouring cluster has been seen.
      std::vector<std::uint32_t> path{origin};
      while (!path.empty()) {
        open_links(path.back());
        if (candidates.empty()) {
          path.pop_back();
          continue;
        }
        const Link l = candidates[forward_rng_.below(candidates.size())];
        if (visit(l)) break;
        path.push_back(overlay_.cluster_of[l.to]);
      }
      break;
    }
    case ForwardStrategy::gateway_multicast: {
      // One parallel wave over every live external link of the origin cluster.
      open_links(origin);
      const auto wave = candidates;
      for (const auto& l : wave) {
        if (!visited[overlay_.cluster_of[l.to]]) visit(l);
      }
      break;
    }
    case ForwardStrategy::flood: {
      std::deque<std::uint32_t> frontier{origin};
      bool found = false;
      while (!frontier.empty() && !found) {
        const auto cluster = frontier.front();
        frontier.pop_front();
        open_links(cluster);
        for (const auto& l : candidates) {
          const auto c = overlay_.cluster_of[l.to];
          if (visited[c]) continue;
          if (visit(l)) {
            found = true;
            break;
          }
          frontier.push_back(c);
        }
      }
      break;
    }
  }

  r.clusters_visited = count;
  r.hops = count - 1;
  if (r.found_cluster) {
    r.outcome = Outcome::remote;
  } else {
    r.outcome = holder(file) ? Outcome::unresolved : Outcome::not_found;
  }
  return r;
}

void Simulator::record(const Resolution& r) {
  auto& m = metrics_;
  ++m.requests_total;
  switch (r.outcome) {
    case Outcome::local: ++m.served_local; break;
    case Outcome::remote: ++m.served_remote; break;
    case Outcome::not_found: ++m.not_found; break;
    case Outcome::unresolved: ++m.unresolved; break;
  }
  ++m.hops_histogram[r.hops];
  m.false_positive_lookups += r.false_positives;
  m.false_negative_lookups += r.false_negatives;
  m.negative_lookups += r.negative_lookups;
  m.clusters_visited_max = std::max<std::uint64_t>(m.clusters_visited_max, r.clusters_visited);

  auto& row = per_round_.back();
  row.served_local += r.outcome == Outcome::local ? 1 : 0;
  row.false_positives += r.false_positives;
  row.false_negatives += r.false_negatives;
}

void Simulator::advertise_phase() {
  const auto period = config_.gossip.full_refresh_period;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (!alive_[v]) continue;
    if (joined_at_[v] == round_ || (round_ + v) % period == 0) {
      nodes_[v].advertise(round_);
      emit({round_, EventKind::advertise, v, v, nodes_[v].local_files().size()});
    }
  }
}

void Simulator::gossip_phase() {
  if (round_ % config_.gossip.gossip_period != 0) return;
  std::vector<std::pair<NodeId, Emission>> queue;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (!alive_[v]) continue;
    auto emission = nodes_[v].gossip_round(round_, gossip_rng_);
    if (!emission.empty()) queue.emplace_back(v, std::move(emission));
  }
  auto& row = per_round_.back();
  for (const auto& [sender, emission] : queue) {
    const auto size = emission.payload.size();
    for (NodeId target : emission.targets) {
      ++metrics_.gossip_messages;
      metrics_.gossip_bytes_total += size;
      row.bytes += size;
      emit({round_, EventKind::gossip_emit, sender, target, size});
      if (!alive_[target]) continue;
      if (!nodes_[target].gossip_receive(emission.payload, round_)) ++metrics_.malformed_payloads;
      emit({round_, EventKind::gossip_receive, target, sender, size});
    }
  }
}

void Simulator::expiry_phase() {
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (!alive_[v]) continue;
    const auto removed = nodes_[v].expiry_sweep(round_);
    if (removed > 0) emit({round_, EventKind::expiry, v, v, removed});
  }
}

void Simulator::request_phase() {
  if (round_ < config_.warmup_rounds) return;
  const auto& req = config_.requests;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (!alive_[v] || !request_rng_.bernoulli(req.request_probability)) continue;
    std::string file;
    auto& previous = previous_request_[v];
    if (previous && request_rng_.bernoulli(req.repeat_probability)) {
      file = *previous;
    } else {
      file = file_name(overlay_.cluster_of[v], sampler_->draw(request_rng_));
    }
    const Resolution r = resolve(v, file, config_.strategy);
    record(r);
    emit({round_, EventKind::request, v, v, r.hops});
    previous = std::move(file);
  }
}

void Simulator::churn_phase() {
  const auto& churn = config_.churn;
  if (churn.join_probability == 0.0 && churn.leave_probability == 0.0) return;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (alive_[v]) {
      if (churn_rng_.bernoulli(churn.leave_probability)) {
        alive_[v] = 0;
        previous_request_[v].reset();
        emit({round_, EventKind::leave, v, v, 0});
      }
    } else if (churn_rng_.bernoulli(churn.join_probability)) {
      alive_[v] = 1;
      joined_at_[v] = round_ + 1;
      nodes_[v].reset(round_ + 1);
      bootstrap_membership(v, round_ + 1);
      emit({round_, EventKind::join, v, v, 0});
    }
  }
}

void Simulator::step() {
  per_round_.push_back({round_, 0, 0, 0, 0});
  alive_node_rounds_ += static_cast<std::uint64_t>(std::count(alive_.begin(), alive_.end(), 1));
  advertise_phase();
  gossip_phase();
  expiry_phase();
  request_phase();
  churn_phase();
  ++round_;
}

SimMetrics Simulator::run() {
  while (round_ < config_.rounds) step();
  return metrics();
}

SimMetrics Simulator::metrics() const {
  SimMetrics m = metrics_;
  m.rounds = round_;
  m.gossip_bytes_per_node_per_round =
      alive_node_rounds_ == 0 ? 0.0
                              : static_cast<double>(m.gossip_bytes_total) / static_cast<double>(alive_node_rounds_);
  return m;
}

SimMetrics sim_run(const SimConfig& config) { return Simulator(config).run(); }

double estimate_traffic(double files_per_cluster, double nodes_per_cluster, double file_lifetime_seconds,
                        double bytes_per_entry, double fanout, double gossip_period_seconds) {
  if (!(files_per_cluster > 0.0 && nodes_per_cluster > 0.0 && file_lifetime_seconds > 0.0 && bytes_per_entry > 0.0 &&
        gossip_period_seconds > 0.0)) {
    throw ParameterError("estimate_traffic: sizes, lifetime and period must be positive");
  }
  if (!(fanout >= 0.0)) throw ParameterError("estimate_traffic: fanout must be >= 0");
  const double own_share_bytes = files_per_cluster / nodes_per_cluster * bytes_per_entry;
  return own_share_bytes * fanout / gossip_period_seconds;
}

std::string metrics_to_json(const SimMetrics& m) {
  nlohmann::ordered_json j;
  j["rounds"] = m.rounds;
  j["nodes"] = m.nodes;
  j["requests_total"] = m.requests_total;
  j["served_local"] = m.served_local;
  j["served_remote"] = m.served_remote;
  j["not_found"] = m.not_found;
  j["unresolved"] = m.unresolved;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [hops, count] : m.hops_histogram) hist[std::to_string(hops)] = count;
  j["hops_histogram"] = hist;
  j["false_positive_lookups"] = m.false_positive_lookups;
  j["false_negative_lookups"] = m.false_negative_lookups;
  j["negative_lookups"] = m.negative_lookups;
  j["malformed_payloads"] = m.malformed_payloads;
  j["gossip_messages"] = m.gossip_messages;
  j["gossip_bytes_total"] = m.gossip_bytes_total;
  j["gossip_bytes_per_node_per_round"] = m.gossip_bytes_per_node_per_round;
  j["clusters_visited_max"] = m.clusters_visited_max;
  return j.dump(2);
}

void write_round_csv(std::ostream& out, const std::vector<RoundStats>& rows) {
  out << "round,served_local,fp,fn,bytes\n";
  for (const auto& r : rows) {
    out << r.round << ',' << r.served_local << ',' << r.false_positives << ',' << r.false_negatives << ',' << r.bytes
        << '\n';
  }
}

}  // namespace swloc::sim
