#include "dipsync/dip.hpp"

#include <stdexcept>

#include "dipsync/errors.hpp"

namespace dipsync {

double filter_output(std::span<const double> window) {
  if (window.size() != kDipTaps.size()) {
    throw std::invalid_argument("filter window must hold exactly 7 samples");
  }
  // Paired differences: a window symmetric about its centre gives exactly 0.
  return 0.2 * (window[6] - window[0]) + 0.5 * (window[5] - window[1]) + 0.2 * (window[4] - window[2]);
}

DipDetector::DipDetector(int warmup) : warmup_remaining_(warmup) {
  if (warmup < 0) throw std::invalid_argument("negative warm-up");
}

std::optional<DipFire> DipDetector::observe(double estimate, Tick tick) {
  if (fired_) throw ProtocolViolation("dip detector already fired");

  // Shift left; values_[6] is the newest sample.
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    values_[i] = values_[i + 1];
    ticks_[i] = ticks_[i + 1];
  }
  values_[6] = estimate;
  ticks_[6] = tick;
  ++count_;
  if (count_ < values_.size()) return std::nullopt;

  const double y = filter_output(values_);
  const std::optional<double> prev = last_output_;
  last_output_ = y;
  if (warmup_remaining_ > 0) {
    --warmup_remaining_;
    return std::nullopt;
  }
  const bool rising = prev && *prev < 0.0 && y > 0.0;
  if (rising || y == 0.0) {
    fired_ = true;
    return DipFire{ticks_[kDelay], values_[kDelay]};
  }
  return std::nullopt;
}

void freeze_at_dip(NodeState& st, double dip_estimate) {
  if (st.frozen) throw ProtocolViolation("node " + std::to_string(st.id) + " already frozen");
  st.clocks.t_c = dip_estimate;
  st.clocks.t_s = dip_estimate;
  st.triggers.I_S = true;
  st.triggers.I_U = false;
  st.triggers.I_T = false;
  st.frozen = true;
}

}  // namespace dipsync
