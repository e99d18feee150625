#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dipsync {

struct EnergyParams {
  double v_min = 2.7;           // V
  double i_mcu = 8.0e-3;        // A
  double i_tx = 21.0e-3;        // A
  double i_rx = 23.3e-3;        // A
  double data_rate = 250000.0;  // bit/s
  unsigned header_footer = 18;  // bytes added to every payload
  double cpu_tick = 1e-6;       // s per CPU timer tick
};

struct EnergyReport {
  double cpu = 0.0;  // J
  double tx = 0.0;
  double rx = 0.0;
  double total = 0.0;
};

/// E = c * cpu_tick * i_mcu * v + (L / R) * (i_tx + i_rx) * v with
/// L = 8 * (payload + header_footer) bits. Throws std::invalid_argument for
/// non-positive electrical parameters.
EnergyReport total_energy(unsigned long long cpu_ticks, unsigned payload_bytes,
                          const EnergyParams& params = {});

struct EnergyReference {
  std::string protocol;
  unsigned long long cpu_ticks;
  unsigned payload_bytes;
  double quoted_uJ;  // published total, not reproduced by the formula
};

/// CPU overhead and payload sizes for the three protocols and the two
/// reference schemes, with their published totals.
const std::vector<EnergyReference>& energy_references();

/// CSV "protocol,cpu_ticks,packet_bytes,cpu_J,tx_J,rx_J,total_J,quoted_uJ_unverified".
std::string energy_table(const EnergyParams& params = {});

}  // namespace dipsync
