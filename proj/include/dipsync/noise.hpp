#pragma once

#include <cstdint>
#include <vector>

#include "dipsync/topology.hpp"

namespace dipsync {

/// Power-law (1/f^alpha) noise by fractional integration of white Gaussian
/// noise: x[n] = sum_m h[m] w[n-m] with h[0] = 1,
/// h[m] = h[m-1] (alpha/2 + m - 1) / m. The result is shifted and scaled to
/// sample mean 0 and sample standard deviation 1 (population normalization).
/// Throws std::invalid_argument for n < 2 or alpha < 0.
std::vector<double> generate_colored_noise(std::size_t n, double alpha, std::uint64_t seed);

/// Filter coefficients h[0..n).
std::vector<double> fractional_integration_coefficients(std::size_t n, double alpha);

/// The node furthest from the gateway (max BFS layer, smallest id on ties).
NodeId malicious_node(const Topology& topo);

}  // namespace dipsync
