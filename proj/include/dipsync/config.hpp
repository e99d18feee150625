#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dipsync/simkernel.hpp"

namespace dipsync {

struct ExperimentSpec {
  std::string name = "run";
  SimConfig sim;
  unsigned repeat = 1;
  std::string output_dir = "out";
};

/// key = value lines; '#' starts a comment. Keys: name, topology, protocol,
/// delta, max_ticks, link_p, malicious, seed, freeze_on_dip, repeat,
/// output_dir. Unknown keys, bad values and unsafe names throw ConfigRejected.
ExperimentSpec parse_spec(std::string_view text);
ExperimentSpec load_spec(const std::filesystem::path& path);

/// Applies a DIPSYNC_SEED-style override when env_seed is non-null.
void apply_seed_override(ExperimentSpec& spec, const char* env_seed);

/// Canonical key = value rendering; parse_spec(render_spec(s)) == s.
std::string render_spec(const ExperimentSpec& spec);

}  // namespace dipsync
