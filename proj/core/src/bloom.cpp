#include "swloc/bloom.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "bytes.hpp"
#include "swloc/error.hpp"

namespace swloc::bloom {

namespace {

// Upper bound on m; keeps index arithmetic inside 64 bits and rejects
// absurd headers before allocating.
constexpr std::uint64_t kMaxBits = std::uint64_t{1} << 40;

std::size_t word_count(std::uint64_t m) { return static_cast<std::size_t>((m + 63) / 64); }

}  // namespace

void BloomParams::validate() const {
  if (m == 0) throw ParameterError("bloom: m must be at least 1");
  if (m > kMaxBits) throw ParameterError("bloom: m exceeds 2^40 bits");
  if (k == 0) throw ParameterError("bloom: k must be at least 1");
  if (k > kMaxHashes) throw ParameterError("bloom: k must not exceed 64");
}

std::uint64_t hash64(std::string_view data, std::uint64_t seed) noexcept {
  constexpr std::uint64_t mul = 0xc6a4a7935bd1e995ULL;
  constexpr int shift = 47;
  const auto* p = reinterpret_cast<const std::uint8_t*>(data.data());
  const std::size_t len = data.size();
  std::uint64_t h = seed ^ (static_cast<std::uint64_t>(len) * mul);

  const std::size_t blocks = len / 8;
  for (std::size_t i = 0; i < blocks; ++i) {
    std::uint64_t k = detail::load_u64(p + 8 * i);
    k *= mul;
    k ^= k >> shift;
    k *= mul;
    h ^= k;
    h *= mul;
  }

  const std::uint8_t* tail = p + 8 * blocks;
  switch (len & 7) {
    case 7: h ^= std::uint64_t{tail[6]} << 48; [[fallthrough]];
    case 6: h ^= std::uint64_t{tail[5]} << 40; [[fallthrough]];
    case 5: h ^= std::uint64_t{tail[4]} << 32; [[fallthrough]];
    case 4: h ^= std::uint64_t{tail[3]} << 24; [[fallthrough]];
    case 3: h ^= std::uint64_t{tail[2]} << 16; [[fallthrough]];
    case 2: h ^= std::uint64_t{tail[1]} << 8; [[fallthrough]];
    case 1:
      h ^= std::uint64_t{tail[0]};
      h *= mul;
  }

  h ^= h >> shift;
  h *= mul;
  h ^= h >> shift;
  return h;
}

BloomFilter::BloomFilter(const BloomParams& params) : params_(params) {
  params_.validate();
  words_.assign(word_count(params_.m), 0);
}

// index_i = (h_a + i * h_b) mod m, accumulated without overflow.
template <typename Fn>
static void for_each_position(const BloomParams& p, std::string_view item, Fn&& fn) {
  const std::uint64_t step = hash64(item, p.seed_b) % p.m;
  std::uint64_t idx = hash64(item, p.seed_a) % p.m;
  for (std::uint32_t i = 0; i < p.k; ++i) {
    if (!fn(idx)) return;
    idx += step;
    if (idx >= p.m) idx -= p.m;
  }
}

void BloomFilter::insert(std::string_view item) {
  for_each_position(params_, item, [this](std::uint64_t i) {
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    return true;
  });
  ++inserted_;
}

bool BloomFilter::contains(std::string_view item) const {
  bool all = true;
  for_each_position(params_, item, [&](std::uint64_t i) {
    all = test_bit(i);
    return all;
  });
  return all;
}

std::vector<std::uint64_t> BloomFilter::positions(std::string_view item) const {
  std::vector<std::uint64_t> out;
  out.reserve(params_.k);
  for_each_position(params_, item, [&](std::uint64_t i) {
    out.push_back(i);
    return true;
  });
  return out;
}

BloomFilter& BloomFilter::merge(const BloomFilter& other) {
  if (!params_.compatible_with(other.params_)) {
    throw IncompatibleFilterError("bloom: union of filters with different m, k or seeds");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  inserted_ += other.inserted_;
  return *this;
}

bool BloomFilter::covers(const BloomFilter& other) const {
  if (!params_.compatible_with(other.params_)) return false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((other.words_[i] & ~words_[i]) != 0) return false;
  }
  return true;
}

std::uint64_t BloomFilter::popcount() const noexcept {
  std::uint64_t total = 0;
  for (auto w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

bool operator==(const BloomFilter& a, const BloomFilter& b) noexcept {
  return a.params_.compatible_with(b.params_) && a.inserted_ == b.inserted_ && a.words_ == b.words_;
}

void BloomFilter::serialize_into(std::vector<std::uint8_t>& out) const {
  const std::size_t at = out.size();
  out.resize(at + serialized_size());
  std::uint8_t* p = out.data() + at;
  for (std::uint64_t v : {kMagic, kFormatVersion, params_.m, std::uint64_t{params_.k}, params_.seed_a, params_.seed_b,
                          inserted_}) {
    detail::store_u64(p, v);
    p += 8;
  }
  const std::uint64_t payload = (params_.m + 7) / 8;
  const std::uint64_t full = payload / 8;
  for (std::uint64_t w = 0; w < full; ++w, p += 8) detail::store_u64(p, words_[w]);
  for (std::uint64_t byte = full * 8; byte < payload; ++byte) {
    *p++ = static_cast<std::uint8_t>(words_[byte >> 3] >> (8 * (byte & 7)));
  }
}

std::vector<std::uint8_t> BloomFilter::serialize() const {
  std::vector<std::uint8_t> out;
  serialize_into(out);
  return out;
}

FilterHeader BloomFilter::read_header(std::span<const std::uint8_t> bytes) {
  detail::ByteReader in(bytes, "bloom");
  if (in.u64() != kMagic) throw FormatError("bloom: bad magic");
  const std::uint64_t version = in.u64();
  if (version != kFormatVersion) {
    throw FormatError("bloom: unsupported format version " + std::to_string(version));
  }
  FilterHeader h;
  h.params.m = in.u64();
  const std::uint64_t k = in.u64();
  h.params.seed_a = in.u64();
  h.params.seed_b = in.u64();
  h.inserted = in.u64();
  if (h.params.m == 0 || h.params.m > kMaxBits || k == 0 || k > kMaxHashes) {
    throw FormatError("bloom: invalid parameters in header");
  }
  h.params.k = static_cast<std::uint32_t>(k);

  const std::uint64_t payload = (h.params.m + 7) / 8;
  if (in.remaining() != payload) {
    throw FormatError(in.remaining() < payload ? "bloom: truncated payload" : "bloom: trailing bytes after payload");
  }
  if (h.params.m % 8 != 0) {
    const auto used = static_cast<unsigned>(h.params.m % 8);
    if ((bytes.back() >> used) != 0) throw FormatError("bloom: padding bits set");
  }
  return h;
}

BloomFilter BloomFilter::deserialize(std::span<const std::uint8_t> bytes) {
  const FilterHeader h = read_header(bytes);
  BloomFilter f(h.params);
  f.inserted_ = h.inserted;
  const std::uint8_t* p = bytes.data() + kHeaderBytes;
  const std::uint64_t payload = (h.params.m + 7) / 8;
  const std::uint64_t full = payload / 8;
  for (std::uint64_t w = 0; w < full; ++w, p += 8) f.words_[w] = detail::load_u64(p);
  for (std::uint64_t byte = full * 8; byte < payload; ++byte) {
    f.words_[byte >> 3] |= std::uint64_t{*p++} << (8 * (byte & 7));
  }
  return f;
}

BloomFilter bloom_union(const BloomFilter& a, const BloomFilter& b) {
  BloomFilter out = a;
  out.merge(b);
  return out;
}

double false_positive_rate(std::uint64_t n, std::uint64_t m, std::uint32_t k) {
  if (n == 0) return 0.0;
  const double x = static_cast<double>(k) * static_cast<double>(n) / static_cast<double>(m);
  // 1 - e^{-x} via expm1 keeps precision when kn/m is small.
  return std::pow(-std::expm1(-x), static_cast<double>(k));
}

std::uint32_t optimal_k(std::uint64_t m, std::uint64_t n) {
  if (m == 0 || n == 0) throw ParameterError("optimal_k: m and n must be positive");
  std::uint32_t best = 1;
  double best_p = false_positive_rate(n, m, 1);
  for (std::uint32_t k = 2; k <= kMaxHashes; ++k) {
    const double p = false_positive_rate(n, m, k);
    if (p < best_p) {
      best_p = p;
      best = k;
    }
  }
  return best;
}

BloomParams size_for(std::uint64_t n, double target_fp) {
  if (n == 0) throw ParameterError("size_for: n must be at least 1");
  if (!(target_fp > 0.0 && target_fp < 1.0)) {
    throw ParameterError("size_for: target false-positive rate must lie in (0, 1)");
  }
  auto fp_at = [n](std::uint64_t bytes) {
    const std::uint64_t m = 8 * bytes;
    return false_positive_rate(n, m, optimal_k(m, n));
  };

  // Optimal-k error is non-increasing in m, so bracket then bisect on bytes.
  std::uint64_t hi = 1;
  while (fp_at(hi) > target_fp) {
    if (8 * hi > kMaxBits) throw ParameterError("size_for: target unreachable below 2^40 bits");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // fp_at(lo) > target unless lo == 0
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (fp_at(mid) <= target_fp) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  BloomParams p;
  p.m = 8 * hi;
  p.k = optimal_k(p.m, n);
  p.expected_n = n;
  return p;
}

}  // namespace swloc::bloom
