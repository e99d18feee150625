#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dipsync/clock.hpp"
#include "dipsync/topology.hpp"

namespace dipsync {

enum class ProtocolKind { SyncBaseline, TSAU, UAF, BAF };

std::string_view to_string(ProtocolKind k) noexcept;
/// Accepts "baseline"/"sync", "tsau", "uaf", "baf" (case-insensitive).
ProtocolKind parse_protocol(std::string_view s);

struct SyncMessage {
  ProtocolKind kind = ProtocolKind::TSAU;
  NodeId sender = 0;
  double time = 0.0;     // seconds
  std::uint8_t s = 0;    // UAF, BAF
  std::uint16_t c = 0;   // BAF

  friend bool operator==(const SyncMessage&, const SyncMessage&) = default;
};

struct NodeState {
  NodeId id = 0;
  NodeClocks clocks;
  TriggerBits triggers;

  // Per-tick accumulators; cleared by begin_tick().
  double clockSum = 0.0;
  unsigned totalReceived = 0;
  double t_av = 0.0;
  bool triggered = false;        // heard a status different from window_status
  std::uint16_t min_opposite_c = 0;
  std::uint16_t max_same_c = 0;
  unsigned same_heard = 0;

  std::uint8_t s = 0;
  std::uint16_t c = 0;
  std::uint8_t window_status = 0;  // s at the start of the tick

  // TSAU slot schedule, in ticks; updateTime = next_slot * delta.
  Tick next_slot = 0;
  Tick slot_period = 1;

  Tick last_flip = -1;  // tick of the last status change (UAF/BAF)
  bool updated_once = false;
  bool frozen = false;

  /// t_i: the value the node broadcasts and is scored on.
  double estimate() const noexcept {
    return (frozen || !updated_once) ? clocks.t_c : clocks.t_s;
  }
};

/// Fresh node: t_c = tau0, s = c = 0, triggers at their power-up values.
/// slot_rank is the node's position among non-gateway nodes (1..N-1);
/// N is the node count including the gateway.
NodeState make_node_state(NodeId id, NodeClocks clocks, Tick slot_rank, std::size_t N);

/// Arithmetic mean, summed in index order.
double neighborhood_average(std::span<const double> values);

/// Clears accumulators and latches window_status = s.
void begin_tick(NodeState& st);

/// UAF/BAF: a node that changed status at tick k-1 sits out tick k. The
/// neighbour messages arriving then were composed before it joined the
/// current wavefront and would bounce it straight back.
bool listening(const NodeState& st, Tick k) noexcept;

// Receive handlers. Every heard time value is accumulated; for UAF/BAF the
// accumulated mean is only applied when some message carried a status that
// differs from window_status (the trigger). Kind mismatch throws
// ProtocolViolation.
void tsau_on_receive(NodeState& st, const SyncMessage& msg);
void uaf_on_receive(NodeState& st, const SyncMessage& msg);
void baf_on_receive(NodeState& st, const SyncMessage& msg);
void baseline_on_receive(NodeState& st, const SyncMessage& msg);

/// TSAU slot at tick k: when k reaches next_slot, apply t_av if more than
/// one message was heard, clear accumulators and advance the slot by N-1.
/// Returns true if the estimate was updated. The broadcast of t_i happens
/// every tick in the kernel regardless.
bool tsau_on_slot(NodeState& st, Tick k);

/// Delta boundary for UAF: apply the trigger. Returns true if the estimate
/// was updated.
bool uaf_on_boundary(NodeState& st, Tick k);

/// Delta boundary for BAF: apply the trigger (c = min opposite c + 1), or
/// the furthest-node reversal when every heard message shares the node's
/// status and carries a strictly smaller counter. Returns true if the
/// estimate was updated; a reversal never updates time.
bool baf_on_boundary(NodeState& st, Tick k);

/// Baseline: apply the mean of everything heard, if anything was heard.
bool baseline_on_boundary(NodeState& st, Tick k);

void on_receive(ProtocolKind kind, NodeState& st, const SyncMessage& msg);
bool on_boundary(ProtocolKind kind, NodeState& st, Tick k);

/// Gateway restart rule for UAF: strictly Ts > L * delta.
bool uaf_gateway_cycle(double Ts, int L, double delta);

/// Gateway beacon schedule.
class GatewayState {
 public:
  GatewayState(ProtocolKind kind, int max_layer, double delta);
  /// Advance to tick k (k >= 1, called once per tick in order) and return
  /// the beacon carrying delta * k.
  SyncMessage beacon(NodeId gateway, Tick k);
  std::uint8_t status() const noexcept { return s_; }

 private:
  ProtocolKind kind_;
  int L_;
  double delta_;
  std::uint8_t s_ = 0;
  Tick cycle_start_ = -1;
};

/// One synchronous averaging step over a whole network: every non-gateway
/// node takes the mean of its neighbours' previous values, the gateway
/// contributing delta * k. prev is indexed by NodeId.
std::vector<double> sync_baseline_step(const Topology& topo, std::span<const double> prev,
                                       Tick k, double delta);

}  // namespace dipsync
