#include "dipsync/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace dipsync {

std::vector<double> fractional_integration_coefficients(std::size_t n, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  std::vector<double> h(n, 0.0);
  if (n == 0) return h;
  h[0] = 1.0;
  for (std::size_t m = 1; m < n; ++m) {
    h[m] = h[m - 1] * (alpha / 2.0 + static_cast<double>(m) - 1.0) / static_cast<double>(m);
  }
  return h;
}

std::vector<double> generate_colored_noise(std::size_t n, double alpha, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("noise series needs at least two samples");
  const auto h = fractional_integration_coefficients(n, alpha);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> w(n);
  for (auto& v : w) v = gauss(rng);

  std::vector<double> x(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t m = 0; m <= k; ++m) {
      if (h[m] == 0.0) break;  // alpha = 0 degenerates to h = delta
      acc += h[m] * w[k - m];
    }
    x[k] = acc;
  }

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(n));
  if (!(sd > 0.0)) throw std::invalid_argument("degenerate noise series");
  for (auto& v : x) v = (v - mean) / sd;
  return x;
}

NodeId malicious_node(const Topology& topo) {
  const auto layers = connectivity_layers(topo);
  for (std::size_t i = 0; i < layers.layer.size(); ++i) {
    if (layers.layer[i] == layers.max_layer) return static_cast<NodeId>(i);
  }
  return topo.gateway();
}

}  // namespace dipsync
