#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dipsync/protocol.hpp"
#include "dipsync/topology.hpp"

namespace dipsync {

struct SimConfig {
  std::string topology = "grid:4x4";  // see make_topology()
  ProtocolKind protocol = ProtocolKind::TSAU;
  double delta = 1e-3;
  Tick max_ticks = 1000;
  double link_p = 1.0;
  bool malicious = false;
  std::uint64_t seed = 1;
  bool freeze_on_dip = true;
};

/// "grid:RxC", "line:N", "star:N", "mesh10", or "file:<edge list path>".
Topology make_topology(const std::string& spec);

/// Throws std::invalid_argument on an out-of-range field.
void validate(const SimConfig& cfg);

struct DipRecord {
  Tick fire_tick;   // tick at which the detector fired
  Tick dip_tick;    // centre sample of the window
  double estimate;  // estimate at dip_tick (the frozen value when freezing)
};

/// Per-tick, per-node record of one episode. Rows run k = 0..max_ticks;
/// row 0 holds the initial clocks.
struct Trace {
  std::size_t node_count = 0;
  Tick ticks = 0;  // number of rows
  double delta = 0.0;
  NodeId gateway = 0;
  std::optional<NodeId> malicious;

  std::vector<double> estimate;         // [k * node_count + i]
  std::vector<double> error;            // |delta k - estimate|
  std::vector<std::uint8_t> activated;  // J_ik
  std::vector<std::uint8_t> frozen;
  std::vector<std::uint64_t> sent;       // link transmissions queued at k for delivery at k + 1
  std::vector<std::uint64_t> delivered;  // link transmissions received at k

  std::vector<std::optional<DipRecord>> dips;  // per node, first detector fire

  std::size_t at(Tick k, std::size_t i) const { return static_cast<std::size_t>(k) * node_count + i; }
  double est(Tick k, std::size_t i) const { return estimate[at(k, i)]; }
  double err(Tick k, std::size_t i) const { return error[at(k, i)]; }
  bool act(Tick k, std::size_t i) const { return activated[at(k, i)] != 0; }
  bool froz(Tick k, std::size_t i) const { return frozen[at(k, i)] != 0; }
};

/// One episode. Per tick k = 1..max_ticks:
///   1. sample links (one draw per edge, canonical order)
///   2. the gateway emits delta k with its protocol status
///   3. non-gateway broadcasts from tick k-1 arrive over active links
///   4. every node runs its protocol boundary (J_ik = 1 if its estimate moved)
///   5. activated nodes feed their dip detector; a fire freezes the node
///      when freeze_on_dip is set
///   6. the row is recorded and every non-gateway node broadcasts t_i
///
/// Throws ConfigRejected on a disconnected topology and EpisodeAborted when a
/// broadcast time no longer fits the 4-byte wire field.
Trace run(const SimConfig& cfg);
Trace run(const SimConfig& cfg, const Topology& topo);

/// Same as sequential run() calls, results in input order. Runs execute on
/// worker threads; if any run throws, the first exception (by input order)
/// is rethrown after all runs finish.
std::vector<Trace> run_batch(const std::vector<SimConfig>& configs, unsigned threads = 0);

/// CSV with header "tick,node,estimate,error,activated,frozen"; reals in %.17g.
std::string trace_csv(const Trace& trace);

}  // namespace dipsync
