#include "swloc/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "swloc/error.hpp"

namespace swloc::workload {

namespace {

// Guards floor(coverage * n) against 0.29 * 100 == 28.999999999999996.
constexpr double kCoverageSlack = 1e-9;

std::vector<double> partial_sums(double alpha, std::uint64_t n) {
  std::vector<double> sums(static_cast<std::size_t>(n) + 1, 0.0);
  double acc = 0.0;
  for (std::uint64_t r = 1; r <= n; ++r) {
    acc += std::pow(static_cast<double>(r), -alpha);
    sums[r] = acc;
  }
  return sums;
}

void check(double alpha, std::uint64_t n_files) {
  if (n_files == 0) throw ParameterError("zipf: n_files must be at least 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError("zipf: alpha must be finite and >= 0");
}

}  // namespace

void ZipfWorkload::validate() const { check(alpha, n_files); }

ZipfSampler::ZipfSampler(const ZipfWorkload& w) : workload_(w) {
  w.validate();
  cdf_ = partial_sums(w.alpha, w.n_files);
  const double total = cdf_.back();
  for (auto& v : cdf_) v /= total;
  cdf_.back() = 1.0;
}

std::uint64_t ZipfSampler::draw(Rng& rng) const {
  const double u = rng.uniform01();
  // First rank r with cdf(r) > u; cdf_[0] == 0 so r >= 1.
  const auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), u);
  if (it == cdf_.end()) return workload_.n_files;
  return static_cast<std::uint64_t>(it - cdf_.begin());
}

double ZipfSampler::cdf(std::uint64_t r) const { return cdf_.at(std::min<std::uint64_t>(r, workload_.n_files)); }

std::vector<std::uint64_t> zipf_sample(const ZipfWorkload& w, std::size_t count) {
  const ZipfSampler sampler(w);
  Rng rng(w.seed);
  std::vector<std::uint64_t> out(count);
  for (auto& r : out) r = sampler.draw(rng);
  return out;
}

ZipfPrefix::ZipfPrefix(double alpha, std::uint64_t n_files) : n_files_(n_files) {
  check(alpha, n_files);
  prefix_ = partial_sums(alpha, n_files);
}

std::uint64_t ZipfPrefix::covered(double coverage) const {
  if (!(coverage >= 0.0 && coverage <= 1.0)) throw ParameterError("fraction_served: coverage must lie in [0, 1]");
  const double c = std::floor(coverage * static_cast<double>(n_files_) + kCoverageSlack);
  return std::min<std::uint64_t>(static_cast<std::uint64_t>(c), n_files_);
}

ServedFraction ZipfPrefix::at(double coverage) const {
  const std::uint64_t c = covered(coverage);
  const double frac = c == n_files_ ? 1.0 : prefix_[c] / prefix_.back();
  return {coverage, frac};
}

ServedFraction fraction_served(double alpha, std::uint64_t n_files, double coverage) {
  return ZipfPrefix(alpha, n_files).at(coverage);
}

std::vector<CurveRow> served_fraction_curve(const std::vector<double>& alphas, std::uint64_t n_files,
                                            const std::vector<double>& coverage_grid) {
  if (alphas.empty() || coverage_grid.empty()) throw ParameterError("served_fraction_curve: empty grid");
  std::vector<CurveRow> rows;
  rows.reserve(alphas.size() * coverage_grid.size());
  for (double alpha : alphas) {
    const ZipfPrefix prefix(alpha, n_files);
    for (double c : coverage_grid) rows.push_back({alpha, c, prefix.at(c).fraction_served});
  }
  return rows;
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "alpha,coverage,fraction_served\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.6f\n", r.alpha, r.coverage, r.fraction_served);
    out << buf;
  }
}

}  // namespace swloc::workload
