#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dipsync/config.hpp"
#include "dipsync/metrics.hpp"

namespace dipsync {

enum class Scenario { Grid16, Line16, Malicious16 };

/// "grid16", "line16", "malicious16"; anything else throws std::invalid_argument.
Scenario parse_scenario(const std::string& s);
std::string to_string(Scenario s);

/// Scenario runs record the full error profile (freeze disabled) so the
/// dip metrics see the whole pre-steady-state trajectory.
SimConfig scenario_config(Scenario s, ProtocolKind protocol, std::uint64_t seed);

/// Test network for the link-availability experiments.
SimConfig sweep_config(ProtocolKind protocol, double p, std::uint64_t seed);

double median(std::vector<double> v);

struct CompareResult {
  Scenario scenario;
  std::vector<ProtocolKind> protocols;
  std::vector<std::vector<DipMetrics>> runs;  // [protocol][repeat]
};

CompareResult compare(Scenario s, const std::vector<ProtocolKind>& protocols, std::uint64_t seed,
                      unsigned repeats);

/// One row per protocol: medians and ranges over repeats.
std::string compare_table(const CompareResult& r);

/// Human-readable ordering checks for the scenario, one line each.
std::vector<std::string> compare_checks(const CompareResult& r);

struct SweepRow {
  double p;
  double median_E_dip_min;          // median over repeats
  std::vector<double> node_e_dip;   // per node, median over repeats
  std::vector<double> detect_rate;  // per node, fraction of repeats where the detector fired
  bool dip_persists;                // every node: median e_dip in [1e-5, 1e-2], detected in most repeats
};

/// Throws std::invalid_argument for an empty list or p outside [0, 1].
std::vector<SweepRow> sweep_links(ProtocolKind protocol, const std::vector<double>& ps,
                                  std::uint64_t seed, unsigned repeats);

std::string sweep_table(ProtocolKind protocol, const std::vector<SweepRow>& rows);

struct RunFiles {
  std::filesystem::path dir;
  std::vector<std::filesystem::path> written;
};

/// Runs every repeat of the spec and writes trace.csv (repeat 0;
/// trace-r<r>.csv for later repeats), metrics.csv, errors.csv and
/// manifest.json into dir.
RunFiles run_experiment(const ExperimentSpec& spec, const std::filesystem::path& dir);

}  // namespace dipsync
