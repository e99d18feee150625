#include "dipsync/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <string>

#include "dipsync/errors.hpp"

namespace dipsync {

std::string_view to_string(ProtocolKind k) noexcept {
  switch (k) {
    case ProtocolKind::SyncBaseline: return "baseline";
    case ProtocolKind::TSAU: return "TSAU";
    case ProtocolKind::UAF: return "UAF";
    case ProtocolKind::BAF: return "BAF";
  }
  return "?";
}

ProtocolKind parse_protocol(std::string_view s) {
  std::string low(s);
  for (auto& ch : low) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (low == "baseline" || low == "sync") return ProtocolKind::SyncBaseline;
  if (low == "tsau") return ProtocolKind::TSAU;
  if (low == "uaf") return ProtocolKind::UAF;
  if (low == "baf") return ProtocolKind::BAF;
  throw std::invalid_argument("unknown protocol '" + std::string(s) + "'");
}

NodeState make_node_state(NodeId id, NodeClocks clocks, Tick slot_rank, std::size_t N) {
  if (N < 2) throw std::invalid_argument("network needs at least two nodes");
  NodeState st;
  st.id = id;
  st.clocks = clocks;
  st.next_slot = slot_rank;
  st.slot_period = static_cast<Tick>(N - 1);
  st.t_av = st.estimate();
  return st;
}

double neighborhood_average(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("average of an empty neighbourhood");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

void begin_tick(NodeState& st) {
  st.clockSum = 0.0;
  st.totalReceived = 0;
  st.t_av = st.estimate();
  st.triggered = false;
  st.min_opposite_c = 0;
  st.max_same_c = 0;
  st.same_heard = 0;
  st.window_status = st.s;
}

bool listening(const NodeState& st, Tick k) noexcept { return st.last_flip < 0 || k > st.last_flip + 1; }

namespace {

void expect_kind(const SyncMessage& msg, ProtocolKind want) {
  if (msg.kind != want) {
    throw ProtocolViolation(std::string(to_string(want)) + " node received a " +
                            std::string(to_string(msg.kind)) + " message");
  }
}

void accumulate(NodeState& st, double t) {
  st.clockSum += t;
  ++st.totalReceived;
}

void apply_average(NodeState& st) {
  st.t_av = st.clockSum / static_cast<double>(st.totalReceived);
  st.clocks.t_s = st.t_av;
  st.updated_once = true;
}

}  // namespace

void tsau_on_receive(NodeState& st, const SyncMessage& msg) {
  expect_kind(msg, ProtocolKind::TSAU);
  accumulate(st, msg.time);
  st.t_av = st.clockSum / static_cast<double>(st.totalReceived);
}

void baseline_on_receive(NodeState& st, const SyncMessage& msg) {
  expect_kind(msg, ProtocolKind::SyncBaseline);
  accumulate(st, msg.time);
  st.t_av = st.clockSum / static_cast<double>(st.totalReceived);
}

void uaf_on_receive(NodeState& st, const SyncMessage& msg) {
  expect_kind(msg, ProtocolKind::UAF);
  accumulate(st, msg.time);
  if (msg.s != st.window_status) {
    st.triggered = true;
    st.s = msg.s;
  }
  st.t_av = st.triggered ? st.clockSum / static_cast<double>(st.totalReceived) : st.estimate();
}

void baf_on_receive(NodeState& st, const SyncMessage& msg) {
  expect_kind(msg, ProtocolKind::BAF);
  accumulate(st, msg.time);
  if (msg.s != st.window_status) {
    st.min_opposite_c = st.triggered ? std::min(st.min_opposite_c, msg.c) : msg.c;
    st.triggered = true;
    st.s = msg.s;
  } else {
    st.max_same_c = st.same_heard ? std::max(st.max_same_c, msg.c) : msg.c;
    ++st.same_heard;
  }
  st.t_av = st.triggered ? st.clockSum / static_cast<double>(st.totalReceived) : st.estimate();
}

bool tsau_on_slot(NodeState& st, Tick k) {
  if (k < st.next_slot) return false;
  bool updated = false;
  if (st.totalReceived > 1 && !st.frozen) {
    apply_average(st);
    updated = true;
  }
  st.clockSum = 0.0;
  st.totalReceived = 0;
  while (st.next_slot <= k) st.next_slot += st.slot_period;
  return updated;
}

bool uaf_on_boundary(NodeState& st, Tick k) {
  if (!st.triggered) return false;
  st.last_flip = k;
  if (st.frozen) return false;
  apply_average(st);
  return true;
}

bool baf_on_boundary(NodeState& st, Tick k) {
  if (st.triggered) {
    st.c = st.min_opposite_c == std::numeric_limits<std::uint16_t>::max()
               ? st.min_opposite_c
               : static_cast<std::uint16_t>(st.min_opposite_c + 1);
    st.last_flip = k;
    if (st.frozen) return false;
    apply_average(st);
    return true;
  }
  if (st.same_heard > 0 && st.same_heard == st.totalReceived && st.c > st.max_same_c) {
    st.c = 0;
    st.s = st.s ? 0 : 1;
    st.last_flip = k;
  }
  return false;
}

bool baseline_on_boundary(NodeState& st, Tick) {
  if (st.totalReceived == 0 || st.frozen) return false;
  apply_average(st);
  return true;
}

void on_receive(ProtocolKind kind, NodeState& st, const SyncMessage& msg) {
  switch (kind) {
    case ProtocolKind::SyncBaseline: return baseline_on_receive(st, msg);
    case ProtocolKind::TSAU: return tsau_on_receive(st, msg);
    case ProtocolKind::UAF: return uaf_on_receive(st, msg);
    case ProtocolKind::BAF: return baf_on_receive(st, msg);
  }
}

bool on_boundary(ProtocolKind kind, NodeState& st, Tick k) {
  switch (kind) {
    case ProtocolKind::SyncBaseline: return baseline_on_boundary(st, k);
    case ProtocolKind::TSAU: return tsau_on_slot(st, k);
    case ProtocolKind::UAF: return uaf_on_boundary(st, k);
    case ProtocolKind::BAF: return baf_on_boundary(st, k);
  }
  return false;
}

bool uaf_gateway_cycle(double Ts, int L, double delta) {
  if (L < 1) throw std::invalid_argument("layer bound must be at least 1");
  return Ts > static_cast<double>(L) * delta;
}

GatewayState::GatewayState(ProtocolKind kind, int max_layer, double delta)
    : kind_(kind), L_(max_layer), delta_(delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (kind == ProtocolKind::BAF) s_ = 1;
}

SyncMessage GatewayState::beacon(NodeId gateway, Tick k) {
  if (kind_ == ProtocolKind::UAF) {
    if (cycle_start_ < 0) {
      s_ = 1;
      cycle_start_ = k;
    } else if (uaf_gateway_cycle(static_cast<double>(k - cycle_start_) * delta_, L_, delta_)) {
      s_ ^= 1;
      cycle_start_ = k;
    }
  }
  SyncMessage m;
  m.kind = kind_;
  m.sender = gateway;
  m.time = gateway_time(k, delta_);
  m.s = (kind_ == ProtocolKind::UAF || kind_ == ProtocolKind::BAF) ? s_ : 0;
  m.c = 0;
  return m;
}

std::vector<double> sync_baseline_step(const Topology& topo, std::span<const double> prev,
                                       Tick k, double delta) {
  if (prev.size() != topo.node_count()) throw std::invalid_argument("state vector size mismatch");
  std::vector<double> next(prev.begin(), prev.end());
  const NodeId g = topo.gateway();
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (i == g) continue;
    auto nb = topo.neighbors(static_cast<NodeId>(i));
    if (nb.empty()) continue;
    double sum = 0.0;
    for (NodeId j : nb) sum += (j == g) ? gateway_time(k, delta) : prev[j];
    next[i] = sum / static_cast<double>(nb.size());
  }
  next[g] = gateway_time(k, delta);
  return next;
}

}  // namespace dipsync
