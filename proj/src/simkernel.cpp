#include "dipsync/simkernel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

#include "dipsync/codec.hpp"
#include "dipsync/dip.hpp"
#include "dipsync/errors.hpp"
#include "dipsync/noise.hpp"
#include "dipsync/rng.hpp"

namespace dipsync {

namespace {

std::size_t parse_count(const std::string& text, const std::string& spec) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != text.size() || text.empty()) {
    throw std::invalid_argument("bad topology '" + spec + "'");
  }
  return v;
}

}  // namespace

Topology make_topology(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "mesh10" && arg.empty()) return make_channel_test_mesh();
  if (kind == "file" && !arg.empty()) return load_edge_list(arg);
  if (kind == "line") return make_line(parse_count(arg, spec));
  if (kind == "star") return make_star(parse_count(arg, spec));
  if (kind == "grid") {
    const auto x = arg.find_first_of("xX");
    if (x == std::string::npos) throw std::invalid_argument("grid topology needs RxC: '" + spec + "'");
    return make_grid(parse_count(arg.substr(0, x), spec), parse_count(arg.substr(x + 1), spec));
  }
  throw std::invalid_argument("unknown topology '" + spec + "'");
}

void validate(const SimConfig& cfg) {
  if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta)) throw std::invalid_argument("delta must be positive");
  if (cfg.max_ticks < 1) throw std::invalid_argument("max_ticks must be at least 1");
  if (!(cfg.link_p >= 0.0 && cfg.link_p <= 1.0)) throw std::invalid_argument("link_p must lie in [0, 1]");
}

Trace run(const SimConfig& cfg) { return run(cfg, make_topology(cfg.topology)); }

Trace run(const SimConfig& cfg, const Topology& topo) {
  validate(cfg);
  LayerAssignment layers;
  try {
    layers = connectivity_layers(topo);
  } catch (const UnreachableNode& e) {
    throw ConfigRejected(std::string("topology rejected: ") + e.what());
  }

  const std::size_t N = topo.node_count();
  const NodeId g = topo.gateway();
  const ProtocolKind kind = cfg.protocol;
  const bool holdoff = kind == ProtocolKind::UAF || kind == ProtocolKind::BAF;
  const RngPlan plan(cfg.seed);

  Trace tr;
  tr.node_count = N;
  tr.ticks = cfg.max_ticks + 1;
  tr.delta = cfg.delta;
  tr.gateway = g;
  const std::size_t cells = N * static_cast<std::size_t>(tr.ticks);
  tr.estimate.assign(cells, 0.0);
  tr.error.assign(cells, 0.0);
  tr.activated.assign(cells, 0);
  tr.frozen.assign(cells, 0);
  tr.sent.assign(static_cast<std::size_t>(tr.ticks), 0);
  tr.delivered.assign(static_cast<std::size_t>(tr.ticks), 0);
  tr.dips.assign(N, std::nullopt);

  std::vector<double> noise;
  if (cfg.malicious) {
    tr.malicious = malicious_node(topo);
    noise = generate_colored_noise(static_cast<std::size_t>(tr.ticks), 2.0, plan.noise_seed);
  }
  const auto is_malicious = [&](std::size_t i) { return tr.malicious && *tr.malicious == i; };

  std::vector<NodeState> st(N);
  std::vector<DipDetector> det(N);
  {
    auto rng = plan.init_clocks();
    for (std::size_t i = 0; i < N; ++i) {
      if (i == g) continue;
      const Tick rank = static_cast<Tick>(i < g ? i + 1 : i);
      st[i] = make_node_state(static_cast<NodeId>(i), init_node_clock(rng), rank, N);
    }
  }
  GatewayState gw(kind, std::max(layers.max_layer, 1), cfg.delta);
  auto links_rng = plan.links();

  std::vector<SyncMessage> out(N);
  auto record_and_broadcast = [&](Tick k) {
    const double tg = gateway_time(k, cfg.delta);
    for (std::size_t i = 0; i < N; ++i) {
      double v = tg;
      if (i != g) v = is_malicious(i) ? noise[static_cast<std::size_t>(k)] : st[i].estimate();
      tr.estimate[tr.at(k, i)] = v;
      tr.error[tr.at(k, i)] = std::fabs(tg - v);
      tr.frozen[tr.at(k, i)] = (i != g && st[i].frozen) ? 1 : 0;
      if (i == g) continue;
      if (!is_malicious(i) && !wire_representable(v)) {
        throw EpisodeAborted(k, "node " + std::to_string(i) + " time overflows the wire field at tick " +
                                    std::to_string(k));
      }
      out[i] = SyncMessage{kind, static_cast<NodeId>(i), v, st[i].s, st[i].c};
    }
    std::uint64_t sent = 0;
    for (std::size_t i = 0; i < N; ++i) sent += topo.neighbors(static_cast<NodeId>(i)).size();
    tr.sent[static_cast<std::size_t>(k)] = sent;
  };

  record_and_broadcast(0);

  for (Tick k = 1; k <= cfg.max_ticks; ++k) {
    const auto links = sample_links(topo, cfg.link_p, links_rng);
    const SyncMessage beacon = gw.beacon(g, k);
    if (!wire_representable(beacon.time)) {
      throw EpisodeAborted(k, "gateway time overflows the wire field at tick " + std::to_string(k));
    }

    std::uint64_t delivered = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const auto nb = topo.neighbors(static_cast<NodeId>(i));
      const auto inc = topo.incident_edges(static_cast<NodeId>(i));
      if (i == g) {
        for (std::size_t e : inc) delivered += links.active[e] ? 1 : 0;
        continue;
      }
      NodeState& s = st[i];
      begin_tick(s);
      const bool deaf = holdoff && !listening(s, k);
      for (std::size_t n = 0; n < nb.size(); ++n) {
        if (!links.active[inc[n]]) continue;
        ++delivered;
        if (deaf) continue;
        const NodeId j = nb[n];
        on_receive(kind, s, j == g ? beacon : out[j]);
      }
    }
    tr.delivered[static_cast<std::size_t>(k)] = delivered;

    for (std::size_t i = 0; i < N; ++i) {
      if (i == g) continue;
      const bool moved = on_boundary(kind, st[i], k);
      if (!moved || is_malicious(i)) continue;
      tr.activated[tr.at(k, i)] = 1;
      if (det[i].fired()) continue;
      if (auto fire = det[i].observe(st[i].estimate(), k)) {
        tr.dips[i] = DipRecord{k, fire->tick, fire->estimate};
        if (cfg.freeze_on_dip) freeze_at_dip(st[i], fire->estimate);
      }
    }

    record_and_broadcast(k);
  }
  return tr;
}

std::vector<Trace> run_batch(const std::vector<SimConfig>& configs, unsigned threads) {
  std::vector<Trace> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  if (configs.empty()) return results;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(configs.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        results[i] = run(configs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::string trace_csv(const Trace& trace) {
  std::string out = "tick,node,estimate,error,activated,frozen\n";
  char buf[128];
  for (Tick k = 0; k < trace.ticks; ++k) {
    for (std::size_t i = 0; i < trace.node_count; ++i) {
      std::snprintf(buf, sizeof buf, "%lld,%zu,%.17g,%.17g,%d,%d\n", static_cast<long long>(k), i,
                    trace.est(k, i), trace.err(k, i), trace.act(k, i) ? 1 : 0, trace.froz(k, i) ? 1 : 0);
      out += buf;
    }
  }
  return out;
}

}  // namespace dipsync
