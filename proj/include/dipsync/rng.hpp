#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dipsync {

std::uint64_t fnv1a64(std::string_view s) noexcept;
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// splitmix64(master ^ fnv1a64(label)).
std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept;

/// Independent named sub-streams of one master seed. Labels:
///   "init-clocks"  initial node clocks, one draw per non-gateway node in id order
///   "links"        link realizations, one draw per edge per tick
///   "noise"        innovations of the colored-noise generator
struct RngPlan {
  explicit RngPlan(std::uint64_t master_seed);

  std::uint64_t master;
  std::uint64_t init_clocks_seed;
  std::uint64_t links_seed;
  std::uint64_t noise_seed;

  std::mt19937_64 init_clocks() const { return std::mt19937_64(init_clocks_seed); }
  std::mt19937_64 links() const { return std::mt19937_64(links_seed); }
};

/// Seed for repeat r of an experiment: r = 0 keeps the base seed,
/// r >= 1 uses derive_seed(base, "repeat/<r>").
std::uint64_t repeat_seed(std::uint64_t base, unsigned r);

}  // namespace dipsync
