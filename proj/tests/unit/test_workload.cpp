#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "swloc/error.hpp"
#include "swloc/random.hpp"
#include "swloc/workload.hpp"

using namespace swloc;
using namespace swloc::workload;

namespace {

// Generalized harmonic number summed smallest-term-first in long double.
long double harmonic(std::uint64_t n, double alpha) {
  long double s = 0.0L;
  for (std::uint64_t r = n; r >= 1; --r) s += std::pow(static_cast<long double>(r), -static_cast<long double>(alpha));
  return s;
}

}  // namespace

TEST_CASE("zipf sampling examples") {
  const auto uniform = zipf_sample({0.0, 10, 3}, 100'000);
  std::vector<std::size_t> hist(11, 0);
  for (auto r : uniform) {
    REQUIRE(r >= 1);
    REQUIRE(r <= 10);
    hist[r]++;
  }
  const double se = std::sqrt(0.1 * 0.9 / 100'000);
  for (std::size_t r = 1; r <= 10; ++r) CHECK(std::abs(hist[r] / 100'000.0 - 0.1) <= 3 * se);

  for (auto r : zipf_sample({2.5, 1, 3}, 1000)) CHECK(r == 1);

  const auto skewed = zipf_sample({1.0, 1000, 5}, 1'000'000);
  const double p1 = static_cast<double>(1.0L / harmonic(1000, 1.0));
  const double ones = static_cast<double>(std::count(skewed.begin(), skewed.end(), 1u)) / 1e6;
  CHECK(std::abs(ones - p1) <= 3 * std::sqrt(p1 * (1 - p1) / 1e6));

  CHECK(zipf_sample({1.0, 1000, 5}, 500) == zipf_sample({1.0, 1000, 5}, 500));
  CHECK_THROWS_AS(zipf_sample({-0.1, 10, 1}, 1), ParameterError);
  CHECK_THROWS_AS(zipf_sample({1.0, 0, 1}, 1), ParameterError);
}

TEST_CASE("fraction_served examples") {
  CHECK(fraction_served(1.3, 5000, 1.0).fraction_served == 1.0);
  CHECK(fraction_served(0.0, 1000, 0.1).fraction_served == doctest::Approx(0.1));
  CHECK(fraction_served(0.0, 999, 0.1).fraction_served == doctest::Approx(99.0 / 999.0));
  CHECK(fraction_served(0.5, 1000, 0.0).fraction_served == 0.0);

  const auto anchor = fraction_served(1.0, 1'000'000, 0.01);
  const double oracle = static_cast<double>(harmonic(10'000, 1.0) / harmonic(1'000'000, 1.0));
  CHECK(anchor.fraction_served == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(std::abs(anchor.fraction_served - 0.680) < 0.001);

  CHECK_THROWS_AS(fraction_served(1.0, 10, 1.5), ParameterError);
  CHECK_THROWS_AS(fraction_served(1.0, 10, -0.1), ParameterError);
}

TEST_CASE("fraction_served is monotone in coverage and alpha") {
  for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
    ZipfPrefix prefix(alpha, 2000);
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double v = prefix.at(i / 100.0).fraction_served;
      CHECK(v >= prev);
      prev = v;
    }
  }
  for (double c : {0.001, 0.01, 0.1, 0.5}) {
    double prev = -1.0;
    for (double alpha = 0.0; alpha <= 2.0; alpha += 0.1) {
      const double v = fraction_served(alpha, 2000, c).fraction_served;
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("sampling agrees with fraction_served") {
  for (double alpha : {0.5, 1.0, 1.5}) {
    const auto sample = zipf_sample({alpha, 500, 13}, 200'000);
    const double expected = fraction_served(alpha, 500, 0.05).fraction_served;
    const double hit = static_cast<double>(std::count_if(sample.begin(), sample.end(), [](auto r) { return r <= 25; })) /
                       sample.size();
    CHECK(std::abs(hit - expected) <= 3 * std::sqrt(expected * (1 - expected) / sample.size()));
  }
}

TEST_CASE("served fraction curve rows and csv") {
  const auto rows = served_fraction_curve({0.5, 1.0}, 1000, {0.01, 0.1});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].alpha == 0.5);
  CHECK(rows[1].coverage == 0.1);
  CHECK(rows[2].alpha == 1.0);
  CHECK(rows[3].fraction_served == doctest::Approx(fraction_served(1.0, 1000, 0.1).fraction_served));
  std::ostringstream out;
  write_curve_csv(out, rows);
  const auto text = out.str();
  CHECK(text.rfind("alpha,coverage,fraction_served\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
