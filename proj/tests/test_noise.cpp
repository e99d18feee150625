#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dipsync/noise.hpp"

using namespace dipsync;

namespace {

double mean(const std::vector<double>& x) { return std::accumulate(x.begin(), x.end(), 0.0) / x.size(); }

double pstd(const std::vector<double>& x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / x.size());
}

double lag1(const std::vector<double>& x) {
  const double m = mean(x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    den += (x[i] - m) * (x[i] - m);
    if (i + 1 < x.size()) num += (x[i] - m) * (x[i + 1] - m);
  }
  return num / den;
}

}  // namespace

TEST_CASE("standardization") {
  for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
    for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
      const auto x = generate_colored_noise(1500, alpha, seed);
      CHECK(std::abs(mean(x)) < 1e-12);
      CHECK(std::abs(pstd(x) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("coefficients") {
  const auto h0 = fractional_integration_coefficients(6, 0.0);
  CHECK(h0 == std::vector<double>{1, 0, 0, 0, 0, 0});
  const auto h2 = fractional_integration_coefficients(6, 2.0);
  CHECK(h2 == std::vector<double>(6, 1.0));  // alpha = 2 is a running sum
  const auto h1 = fractional_integration_coefficients(4, 1.0);
  CHECK(h1[1] == doctest::Approx(0.5));
  CHECK(h1[2] == doctest::Approx(0.375));
  CHECK(h1[3] == doctest::Approx(0.3125));
}

TEST_CASE("alpha = 0 is standardized white noise") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> w(512);
  for (auto& v : w) v = g(rng);
  const double m = mean(w), s = pstd(w);
  const auto x = generate_colored_noise(512, 0.0, 5);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(x[i] == doctest::Approx((w[i] - m) / s).epsilon(1e-12));
}

TEST_CASE("lag-1 autocorrelation") {
  CHECK(lag1(generate_colored_noise(4096, 2.0, 11)) > 0.9);
  CHECK(std::abs(lag1(generate_colored_noise(4096, 0.0, 11))) < 0.05);
}

TEST_CASE("determinism and errors") {
  CHECK(generate_colored_noise(300, 2.0, 4) == generate_colored_noise(300, 2.0, 4));
  CHECK(generate_colored_noise(300, 2.0, 4) != generate_colored_noise(300, 2.0, 5));
  CHECK_THROWS_AS(generate_colored_noise(1, 2.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(generate_colored_noise(10, -1.0, 4), std::invalid_argument);
}

TEST_CASE("malicious node") {
  CHECK(malicious_node(make_line(16)) == 15);
  const auto g = make_grid(4, 4);
  const auto m = malicious_node(g);
  CHECK(m == 15);
  CHECK(g.neighbors(m).size() == 2);
  CHECK(malicious_node(make_star(6)) == 1);
}
