#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "swloc/random.hpp"

namespace swloc::workload {

/// Zipf popularity over ranks 1..n_files: P(r) proportional to r^{-alpha}.
struct ZipfWorkload {
  double alpha = 1.0;
  std::uint64_t n_files = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Inverse-CDF sampler over a precomputed cumulative table (8 bytes per rank).
class ZipfSampler {
 public:
  explicit ZipfSampler(const ZipfWorkload& w);

  /// Draws one rank in [1, n_files] using `rng`.
  std::uint64_t draw(Rng& rng) const;

  const ZipfWorkload& workload() const noexcept { return workload_; }
  /// P(rank <= r).
  double cdf(std::uint64_t r) const;

 private:
  ZipfWorkload workload_;
  std::vector<double> cdf_;
};

/// `count` i.i.d. ranks from a stream seeded with w.seed.
std::vector<std::uint64_t> zipf_sample(const ZipfWorkload& w, std::size_t count);

struct ServedFraction {
  double coverage = 0.0;
  double fraction_served = 0.0;
};

/// Share of requests hitting the floor(coverage * n_files) most popular ranks.
ServedFraction fraction_served(double alpha, std::uint64_t n_files, double coverage);

/// Partial sums of r^{-alpha}, reused across a coverage grid.
class ZipfPrefix {
 public:
  ZipfPrefix(double alpha, std::uint64_t n_files);
  ServedFraction at(double coverage) const;
  /// Ranks covered by `coverage`: floor(coverage * n_files).
  std::uint64_t covered(double coverage) const;

 private:
  std::uint64_t n_files_;
  std::vector<double> prefix_;  // prefix_[c] = sum_{r<=c} r^{-alpha}
};

struct CurveRow {
  double alpha = 0.0;
  double coverage = 0.0;
  double fraction_served = 0.0;
};

/// Rows for every (alpha, coverage) pair, alpha-major in the given order.
std::vector<CurveRow> served_fraction_curve(const std::vector<double>& alphas, std::uint64_t n_files,
                                            const std::vector<double>& coverage_grid);

/// CSV with header `alpha,coverage,fraction_served`.
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows);

}  // namespace swloc::workload
