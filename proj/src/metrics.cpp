#include "dipsync/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dipsync {

DipMetrics aggregate_dips(std::vector<NodeDip> nodes) {
  if (nodes.empty()) throw std::invalid_argument("dip metrics need at least one non-gateway node");
  DipMetrics m;
  const double n = static_cast<double>(nodes.size());
  for (const auto& d : nodes) {
    m.E_dip_min += d.e_dip;
    m.k_dip_min += static_cast<double>(d.k_dip);
    m.cycles_mean += static_cast<double>(d.cycles);
  }
  m.E_dip_min /= n;
  m.k_dip_min /= n;
  m.cycles_mean /= n;
  for (const auto& d : nodes) {
    const double dk = static_cast<double>(d.k_dip) - m.k_dip_min;
    const double dc = static_cast<double>(d.cycles) - m.cycles_mean;
    m.V_k_dip += dk * dk;
    m.V_cycles += dc * dc;
  }
  m.V_k_dip /= n;
  m.V_cycles /= n;
  m.nodes = std::move(nodes);
  return m;
}

DipMetrics dip_metrics(const Trace& trace) {
  if (trace.node_count < 2 || trace.ticks < 1) throw std::invalid_argument("trace too small for dip metrics");
  std::vector<NodeDip> nodes;
  for (std::size_t i = 0; i < trace.node_count; ++i) {
    if (i == trace.gateway || (trace.malicious && *trace.malicious == i)) continue;

    Tick first = 0;
    while (first < trace.ticks && !trace.act(first, i)) ++first;
    if (first == trace.ticks) first = 0;
    Tick last = first;
    while (last + 1 < trace.ticks && !trace.froz(last, i)) ++last;

    NodeDip d{static_cast<NodeId>(i), first, trace.err(first, i), 0};
    for (Tick k = first + 1; k <= last; ++k) {
      if (trace.err(k, i) < d.e_dip) {
        d.e_dip = trace.err(k, i);
        d.k_dip = k;
      }
    }
    for (Tick k = 0; k <= d.k_dip; ++k) d.cycles += trace.act(k, i) ? 1 : 0;
    nodes.push_back(d);
  }
  return aggregate_dips(std::move(nodes));
}

ErrorSample error_at(std::span<const double> t, const Topology& topo) {
  if (t.size() != topo.node_count()) throw std::invalid_argument("clock vector does not match topology");
  ErrorSample s;
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  s.E_max_G = *hi - *lo;
  double local_sum = 0.0, global_sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    global_sum += std::max(t[i] - *lo, *hi - t[i]);
    double m = 0.0;
    for (NodeId j : topo.neighbors(static_cast<NodeId>(i))) m = std::max(m, std::fabs(t[i] - t[j]));
    local_sum += m;
    s.E_max_L = std::max(s.E_max_L, m);
  }
  const double n = static_cast<double>(t.size());
  s.E_avg_G = global_sum / n;
  s.E_avg_L = local_sum / n;
  return s;
}

std::vector<ErrorSample> error_series(const Trace& trace, const Topology& topo) {
  if (trace.node_count != topo.node_count() || trace.gateway != topo.gateway()) {
    throw std::invalid_argument("trace and topology do not match");
  }
  std::vector<ErrorSample> out;
  out.reserve(static_cast<std::size_t>(trace.ticks));
  for (Tick k = 0; k < trace.ticks; ++k) {
    std::span<const double> row(trace.estimate.data() + trace.at(k, 0), trace.node_count);
    out.push_back(error_at(row, topo));
  }
  return out;
}

std::string summary_table(std::vector<ProtocolSummary> rows) {
  auto rank = [](ProtocolKind k) {
    switch (k) {
      case ProtocolKind::TSAU: return 0;
      case ProtocolKind::UAF: return 1;
      case ProtocolKind::BAF: return 2;
      case ProtocolKind::SyncBaseline: return 3;
    }
    return 4;
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const auto& a, const auto& b) { return rank(a.protocol) < rank(b.protocol); });
  std::string out = "protocol,E_dip_min,k_dip_min,V_k_dip,cycles_mean,V_cycles\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.6e,%.4f,%.4f,%.4f,%.4f\n", std::string(to_string(r.protocol)).c_str(),
                  r.metrics.E_dip_min, r.metrics.k_dip_min, r.metrics.V_k_dip, r.metrics.cycles_mean,
                  r.metrics.V_cycles);
    out += buf;
  }
  return out;
}

}  // namespace dipsync
