#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace swloc::bloom {

inline constexpr std::uint32_t kMaxHashes = 64;
inline constexpr std::uint64_t kDefaultSeedA = 0x243f6a8885a308d3ULL;
inline constexpr std::uint64_t kDefaultSeedB = 0x13198a2e03707344ULL;

/// Wire format: 8-byte magic, then version, m, k, seed_a, seed_b and
/// inserted_count as little-endian u64, then ceil(m/8) payload bytes with
/// bit i at byte i/8, position i%8 (LSB first).
inline constexpr std::uint64_t kMagic = 0x314d4f4f4c425753ULL;  // "SWBLOOM1"
inline constexpr std::uint64_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderBytes = 7 * 8;

struct BloomParams {
  std::uint64_t m = 0;           ///< bit count
  std::uint32_t k = 0;           ///< hash functions, 1..kMaxHashes
  std::uint64_t expected_n = 0;  ///< advisory; not part of the wire format
  std::uint64_t seed_a = kDefaultSeedA;
  std::uint64_t seed_b = kDefaultSeedB;

  /// Throws ParameterError unless m >= 1 and 1 <= k <= kMaxHashes.
  void validate() const;

  /// Same bit layout and hash family; expected_n is ignored.
  bool compatible_with(const BloomParams& other) const noexcept {
    return m == other.m && k == other.k && seed_a == other.seed_a && seed_b == other.seed_b;
  }
};

struct FilterHeader {
  BloomParams params;  ///< expected_n is not serialized and reads as 0
  std::uint64_t inserted = 0;
};

/// Fixed-size Bloom filter with double hashing over two keyed 64-bit hashes.
///
/// Value type: copy freely, no internal synchronization. inserted_count()
/// counts insert calls, so it is an upper bound on the number of distinct
/// items and is the natural n for false-positive estimates.
class BloomFilter {
 public:
  explicit BloomFilter(const BloomParams& params);

  void insert(std::string_view item);
  bool contains(std::string_view item) const;

  /// In-place OR. Throws IncompatibleFilterError on parameter mismatch.
  BloomFilter& merge(const BloomFilter& other);

  /// True if every bit set in `other` is also set here.
  bool covers(const BloomFilter& other) const;

  const BloomParams& params() const noexcept { return params_; }
  std::uint64_t bit_count() const noexcept { return params_.m; }
  std::uint64_t inserted_count() const noexcept { return inserted_; }
  std::uint64_t popcount() const noexcept;
  bool test_bit(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }

  /// Size in bytes of serialize() output.
  std::size_t serialized_size() const noexcept { return kHeaderBytes + (params_.m + 7) / 8; }

  std::vector<std::uint8_t> serialize() const;
  void serialize_into(std::vector<std::uint8_t>& out) const;
  /// Throws FormatError on bad magic, unknown version, invalid parameters,
  /// truncated or oversized payload, or set padding bits.
  static BloomFilter deserialize(std::span<const std::uint8_t> bytes);
  /// Validates a serialized filter exactly as deserialize() does, without
  /// materializing the bits.
  static FilterHeader read_header(std::span<const std::uint8_t> bytes);

  /// Equality over parameters (excluding expected_n), bits and inserted_count.
  friend bool operator==(const BloomFilter& a, const BloomFilter& b) noexcept;

  /// Bit positions probed for `item`, in probe order. Exposed for tests.
  std::vector<std::uint64_t> positions(std::string_view item) const;

 private:
  BloomParams params_;
  std::uint64_t inserted_ = 0;
  std::vector<std::uint64_t> words_;
};

/// OR of two filters with identical parameters; inserted counts add.
BloomFilter bloom_union(const BloomFilter& a, const BloomFilter& b);

/// p_err ~= (1 - e^{-kn/m})^k.
double false_positive_rate(std::uint64_t n, std::uint64_t m, std::uint32_t k);

/// Integer k in [1, 64] minimizing false_positive_rate(n, m, k); ties go to
/// the smaller k.
std::uint32_t optimal_k(std::uint64_t m, std::uint64_t n);

/// Smallest whole-byte m whose optimal-k false-positive rate for n items is
/// at most target_fp. Requires 0 < target_fp < 1 and n >= 1.
BloomParams size_for(std::uint64_t n, double target_fp);

/// Keyed 64-bit hash (MurmurHash64A, little-endian block reads).
std::uint64_t hash64(std::string_view data, std::uint64_t seed) noexcept;

}  // namespace swloc::bloom
