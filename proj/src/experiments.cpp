#include "dipsync/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "dipsync/rng.hpp"
#include "json.hpp"

namespace dipsync {

Scenario parse_scenario(const std::string& s) {
  if (s == "grid16") return Scenario::Grid16;
  if (s == "line16") return Scenario::Line16;
  if (s == "malicious16") return Scenario::Malicious16;
  throw std::invalid_argument("unknown scenario '" + s + "' (grid16, line16, malicious16)");
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Grid16: return "grid16";
    case Scenario::Line16: return "line16";
    case Scenario::Malicious16: return "malicious16";
  }
  return "?";
}

SimConfig scenario_config(Scenario s, ProtocolKind protocol, std::uint64_t seed) {
  SimConfig c;
  c.protocol = protocol;
  c.seed = seed;
  c.freeze_on_dip = false;
  switch (s) {
    case Scenario::Grid16:
      c.topology = "grid:4x4";
      c.max_ticks = 1500;
      break;
    case Scenario::Line16:
      c.topology = "line:16";
      c.max_ticks = 3000;
      break;
    case Scenario::Malicious16:
      c.topology = "grid:4x4";
      c.max_ticks = 3000;
      c.malicious = true;
      break;
  }
  return c;
}

SimConfig sweep_config(ProtocolKind protocol, double p, std::uint64_t seed) {
  SimConfig c;
  c.topology = "mesh10";
  c.protocol = protocol;
  c.link_p = p;
  c.seed = seed;
  c.max_ticks = 3000;
  c.freeze_on_dip = false;
  return c;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of nothing");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

CompareResult compare(Scenario s, const std::vector<ProtocolKind>& protocols, std::uint64_t seed,
                      unsigned repeats) {
  if (protocols.empty()) throw std::invalid_argument("no protocols to compare");
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  std::vector<SimConfig> cfgs;
  for (auto p : protocols) {
    for (unsigned r = 0; r < repeats; ++r) cfgs.push_back(scenario_config(s, p, repeat_seed(seed, r)));
  }
  const auto traces = run_batch(cfgs);
  CompareResult out{s, protocols, {}};
  out.runs.resize(protocols.size());
  for (std::size_t i = 0; i < traces.size(); ++i) out.runs[i / repeats].push_back(dip_metrics(traces[i]));
  return out;
}

namespace {

template <class F>
std::vector<double> collect(const std::vector<DipMetrics>& runs, F f) {
  std::vector<double> v;
  for (const auto& m : runs) v.push_back(f(m));
  return v;
}

}  // namespace

std::string compare_table(const CompareResult& r) {
  std::string out =
      "protocol,repeats,E_dip_min_median,E_dip_min_min,E_dip_min_max,k_dip_min_median,V_k_dip_median,"
      "V_k_dip_min,V_k_dip_max,cycles_mean_median,V_cycles_median\n";
  char buf[512];
  for (std::size_t p = 0; p < r.protocols.size(); ++p) {
    const auto& runs = r.runs[p];
    auto E = collect(runs, [](const DipMetrics& m) { return m.E_dip_min; });
    auto K = collect(runs, [](const DipMetrics& m) { return m.k_dip_min; });
    auto V = collect(runs, [](const DipMetrics& m) { return m.V_k_dip; });
    auto C = collect(runs, [](const DipMetrics& m) { return m.cycles_mean; });
    auto VC = collect(runs, [](const DipMetrics& m) { return m.V_cycles; });
    std::snprintf(buf, sizeof buf, "%s,%zu,%.6e,%.6e,%.6e,%.3f,%.4f,%.4f,%.4f,%.3f,%.4f\n",
                  std::string(to_string(r.protocols[p])).c_str(), runs.size(), median(E),
                  *std::min_element(E.begin(), E.end()), *std::max_element(E.begin(), E.end()), median(K),
                  median(V), *std::min_element(V.begin(), V.end()), *std::max_element(V.begin(), V.end()),
                  median(C), median(VC));
    out += buf;
  }
  return out;
}

std::vector<std::string> compare_checks(const CompareResult& r) {
  std::vector<std::string> lines;
  auto find = [&](ProtocolKind k) -> const std::vector<DipMetrics>* {
    for (std::size_t i = 0; i < r.protocols.size(); ++i) {
      if (r.protocols[i] == k) return &r.runs[i];
    }
    return nullptr;
  };
  const auto* tsau = find(ProtocolKind::TSAU);
  const auto* uaf = find(ProtocolKind::UAF);
  const auto* baf = find(ProtocolKind::BAF);
  auto medE = [](const std::vector<DipMetrics>* v) {
    return median(collect(*v, [](const DipMetrics& m) { return m.E_dip_min; }));
  };
  auto yes = [](bool b) { return std::string(b ? "holds" : "does not hold"); };

  if (r.scenario != Scenario::Malicious16) {
    if (uaf) {
      unsigned zero = 0;
      for (const auto& m : *uaf) zero += m.V_k_dip == 0.0 ? 1 : 0;
      lines.push_back("UAF V_k_dip == 0 in " + std::to_string(zero) + "/" + std::to_string(uaf->size()) +
                      " repeats");
    }
    if (baf && tsau) lines.push_back("median E_dip_min BAF < TSAU: " + yes(medE(baf) < medE(tsau)));
    if (baf && uaf) lines.push_back("median E_dip_min BAF < UAF: " + yes(medE(baf) < medE(uaf)));
  } else if (tsau && uaf && baf) {
    unsigned a = 0, b = 0;
    for (std::size_t i = 0; i < tsau->size(); ++i) {
      const auto &t = (*tsau)[i], &u = (*uaf)[i], &f = (*baf)[i];
      a += f.V_k_dip > 10.0 * std::max(t.V_k_dip, u.V_k_dip) ? 1 : 0;
      b += (u.k_dip_min > t.k_dip_min && u.k_dip_min > f.k_dip_min) ? 1 : 0;
    }
    const auto n = std::to_string(tsau->size());
    lines.push_back("V_k_dip(BAF) > 10 max(V_k_dip(TSAU), V_k_dip(UAF)) in " + std::to_string(a) + "/" + n);
    lines.push_back("k_dip_min(UAF) above TSAU and BAF in " + std::to_string(b) + "/" + n);
  }
  return lines;
}

std::vector<SweepRow> sweep_links(ProtocolKind protocol, const std::vector<double>& ps, std::uint64_t seed,
                                  unsigned repeats) {
  if (ps.empty()) throw std::invalid_argument("empty probability list");
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("link probability outside [0, 1]");
  }
  std::vector<SimConfig> cfgs;
  for (double p : ps) {
    for (unsigned r = 0; r < repeats; ++r) cfgs.push_back(sweep_config(protocol, p, repeat_seed(seed, r)));
  }
  const auto traces = run_batch(cfgs);

  std::vector<SweepRow> rows;
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    SweepRow row{ps[pi], 0.0, {}, {}, true};
    std::vector<double> means;
    std::vector<std::vector<double>> per_node;
    std::vector<unsigned> fired;
    for (unsigned r = 0; r < repeats; ++r) {
      const Trace& tr = traces[pi * repeats + r];
      const auto m = dip_metrics(tr);
      means.push_back(m.E_dip_min);
      per_node.resize(m.nodes.size());
      fired.resize(m.nodes.size(), 0);
      for (std::size_t n = 0; n < m.nodes.size(); ++n) {
        per_node[n].push_back(m.nodes[n].e_dip);
        fired[n] += tr.dips[m.nodes[n].node].has_value() ? 1 : 0;
      }
    }
    row.median_E_dip_min = median(means);
    for (std::size_t n = 0; n < per_node.size(); ++n) {
      const double e = median(per_node[n]);
      const double rate = static_cast<double>(fired[n]) / repeats;
      row.node_e_dip.push_back(e);
      row.detect_rate.push_back(rate);
      if (!(e >= 1e-5 && e <= 1e-2) || rate < 0.5) row.dip_persists = false;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_table(ProtocolKind protocol, const std::vector<SweepRow>& rows) {
  std::string out = "protocol,p,E_dip_min_median,node_e_dip_min,node_e_dip_max,detect_rate_min,dip_persists\n";
  char buf[256];
  for (const auto& r : rows) {
    const auto [elo, ehi] = std::minmax_element(r.node_e_dip.begin(), r.node_e_dip.end());
    const double dmin = *std::min_element(r.detect_rate.begin(), r.detect_rate.end());
    std::snprintf(buf, sizeof buf, "%s,%.2f,%.6e,%.6e,%.6e,%.3f,%d\n", std::string(to_string(protocol)).c_str(),
                  r.p, r.median_E_dip_min, *elo, *ehi, dmin, r.dip_persists ? 1 : 0);
    out += buf;
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content, RunFiles& files) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + p.string());
  files.written.push_back(p);
}

std::string errors_csv(const Trace& tr, const Topology& topo) {
  std::string out = "tick,E_max_G,E_avg_G,E_max_L,E_avg_L\n";
  char buf[256];
  const auto series = error_series(tr, topo);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", k, s.E_max_G, s.E_avg_G, s.E_max_L,
                  s.E_avg_L);
    out += buf;
  }
  return out;
}

}  // namespace

RunFiles run_experiment(const ExperimentSpec& spec, const std::filesystem::path& dir) {
  const Topology topo = make_topology(spec.sim.topology);
  std::vector<SimConfig> cfgs;
  for (unsigned r = 0; r < spec.repeat; ++r) {
    SimConfig c = spec.sim;
    c.seed = repeat_seed(spec.sim.seed, r);
    cfgs.push_back(c);
  }
  const auto traces = run_batch(cfgs);

  RunFiles files{dir, {}};
  std::filesystem::create_directories(dir);

  std::string metrics = "repeat,seed,E_dip_min,k_dip_min,V_k_dip,cycles_mean,V_cycles,nodes_detected\n";
  std::vector<double> E, K, V;
  char buf[512];
  for (unsigned r = 0; r < spec.repeat; ++r) {
    const Trace& tr = traces[r];
    const auto m = dip_metrics(tr);
    std::size_t detected = 0;
    for (const auto& n : m.nodes) detected += tr.dips[n.node].has_value() ? 1 : 0;
    std::snprintf(buf, sizeof buf, "%u,%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%zu\n", r,
                  static_cast<unsigned long long>(cfgs[r].seed), m.E_dip_min, m.k_dip_min, m.V_k_dip,
                  m.cycles_mean, m.V_cycles, detected);
    metrics += buf;
    E.push_back(m.E_dip_min);
    K.push_back(m.k_dip_min);
    V.push_back(m.V_k_dip);
    const std::string name = r == 0 ? "trace.csv" : "trace-r" + std::to_string(r) + ".csv";
    write_file(dir / name, trace_csv(tr), files);
    if (r == 0) write_file(dir / "errors.csv", errors_csv(tr, topo), files);
  }
  if (spec.repeat > 1) {
    auto row = [&](const char* label, auto pick) {
      std::snprintf(buf, sizeof buf, "%s,,%.17g,%.17g,%.17g,,,\n", label, pick(E), pick(K), pick(V));
      metrics += buf;
    };
    row("median", [](const std::vector<double>& v) { return median(v); });
    row("min", [](const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); });
    row("max", [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); });
  }
  write_file(dir / "metrics.csv", metrics, files);

  nlohmann::ordered_json man;
  man["name"] = spec.name;
  man["topology"] = spec.sim.topology;
  man["node_count"] = topo.node_count();
  man["gateway"] = topo.gateway();
  man["protocol"] = std::string(to_string(spec.sim.protocol));
  man["delta"] = spec.sim.delta;
  man["max_ticks"] = spec.sim.max_ticks;
  man["link_p"] = spec.sim.link_p;
  man["malicious"] = spec.sim.malicious;
  if (traces[0].malicious) man["malicious_node"] = *traces[0].malicious;
  man["seed"] = spec.sim.seed;
  man["freeze_on_dip"] = spec.sim.freeze_on_dip;
  man["repeat"] = spec.repeat;
  std::vector<std::uint64_t> seeds;
  for (const auto& c : cfgs) seeds.push_back(c.seed);
  man["repeat_seeds"] = seeds;
  const RngPlan plan(spec.sim.seed);
  man["rng"] = {{"engine", "mt19937_64"},
                {"derivation", "splitmix64(seed ^ fnv1a64(label))"},
                {"init-clocks", plan.init_clocks_seed},
                {"links", plan.links_seed},
                {"noise", plan.noise_seed}};
  man["noise_alpha"] = 2.0;
  man["dip_warmup_outputs"] = 3;
  write_file(dir / "manifest.json", man.dump(2) + "\n", files);
  return files;
}

}  // namespace dipsync
