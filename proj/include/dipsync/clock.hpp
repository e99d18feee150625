#pragma once

#include <random>

#include "dipsync/topology.hpp"

namespace dipsync {

/// Perfect reference clock: time(k) = delta * k.
struct GatewayClock {
  double delta = 1e-3;
  Tick tick = 0;

  double time() const noexcept { return delta * static_cast<double>(tick); }
};

struct NodeClocks {
  double t_c = 0.0;   // logical clock
  double t_s = 0.0;   // soft estimate
  double tau0 = 0.0;  // hardware clock at power-up
};

struct TriggerBits {
  bool I_T = true;
  bool I_U = true;
  bool I_S = false;
  bool I_R = false;
};

/// Computed as a product so there is no running-sum drift.
double gateway_time(Tick k, double delta);

/// tau0 = t_c ~ U[0, 1), t_s = 0.
NodeClocks init_node_clock(std::mt19937_64& rng);

/// Seconds between resynchronizations for a given drift and target accuracy.
double resync_period(double drift_ppm, double accuracy);

}  // namespace dipsync
