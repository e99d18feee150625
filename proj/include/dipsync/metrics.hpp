#pragma once

#include <span>
#include <string>
#include <vector>

#include "dipsync/protocol.hpp"
#include "dipsync/simkernel.hpp"
#include "dipsync/topology.hpp"

namespace dipsync {

struct NodeDip {
  NodeId node;
  Tick k_dip;          // first tick attaining the minimum error
  double e_dip;        // that minimum
  long long cycles;    // the node's own updates up to and including k_dip
};

struct DipMetrics {
  std::vector<NodeDip> nodes;  // non-gateway, non-malicious, ascending id
  double E_dip_min = 0.0;      // mean of per-node minima
  double k_dip_min = 0.0;      // mean dip tick
  double V_k_dip = 0.0;        // (1/n) sum (k_dip_i - mean)^2
  double cycles_mean = 0.0;    // same two statistics counted in update cycles
  double V_cycles = 0.0;
};

/// Per-node minimum of e_i(k) over the node's active window: from its first
/// update (or tick 0 if it never updates) to the tick it froze (or the last
/// tick). Ties resolve to the earliest tick. The malicious node, if any, is
/// excluded. Throws std::invalid_argument when no node qualifies.
DipMetrics dip_metrics(const Trace& trace);

/// Aggregation on its own: mean of e, mean and variance of k, with the
/// population normalization 1/n. Throws std::invalid_argument on empty or
/// mismatched input.
DipMetrics aggregate_dips(std::vector<NodeDip> nodes);

struct ErrorSample {
  double E_max_G = 0.0;
  double E_avg_G = 0.0;
  double E_max_L = 0.0;
  double E_avg_L = 0.0;
};

/// Global metrics over all node pairs (gateway included), local metrics over
/// topology edges. Averages are (1/N) sum_i max_j |t_i - t_j|.
ErrorSample error_at(std::span<const double> clocks, const Topology& topo);

/// error_at() for every tick of the trace.
std::vector<ErrorSample> error_series(const Trace& trace, const Topology& topo);

struct ProtocolSummary {
  ProtocolKind protocol;
  DipMetrics metrics;
};

/// CSV "protocol,E_dip_min,k_dip_min,V_k_dip,cycles_mean,V_cycles", rows in
/// the order TSAU, UAF, BAF, baseline regardless of input order.
std::string summary_table(std::vector<ProtocolSummary> rows);

}  // namespace dipsync
