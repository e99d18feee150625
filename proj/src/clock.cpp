#include "dipsync/clock.hpp"

#include <stdexcept>

namespace dipsync {

double gateway_time(Tick k, double delta) {
  if (k < 0) throw std::invalid_argument("negative tick");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  return delta * static_cast<double>(k);
}

NodeClocks init_node_clock(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  NodeClocks c;
  c.tau0 = unit(rng);
  c.t_c = c.tau0;
  c.t_s = 0.0;
  return c;
}

double resync_period(double drift_ppm, double accuracy) {
  if (!(drift_ppm > 0.0) || !(accuracy > 0.0)) {
    throw std::invalid_argument("drift and accuracy must be positive");
  }
  return accuracy * 1e6 / drift_ppm;
}

}  // namespace dipsync
