#include "dipsync/rng.hpp"

#include <string>

namespace dipsync {

std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept {
  return splitmix64(master ^ fnv1a64(label));
}

RngPlan::RngPlan(std::uint64_t master_seed)
    : master(master_seed),
      init_clocks_seed(derive_seed(master_seed, "init-clocks")),
      links_seed(derive_seed(master_seed, "links")),
      noise_seed(derive_seed(master_seed, "noise")) {}

std::uint64_t repeat_seed(std::uint64_t base, unsigned r) {
  if (r == 0) return base;
  return derive_seed(base, "repeat/" + std::to_string(r));
}

}  // namespace dipsync
