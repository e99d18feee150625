#pragma once

#include <array>
#include <optional>
#include <span>

#include "dipsync/protocol.hpp"

namespace dipsync {

/// Difference filter taps, oldest sample first. The centre tap is zero.
inline constexpr std::array<double, 7> kDipTaps{-0.2, -0.5, -0.2, 0.0, 0.2, 0.5, 0.2};

/// y = 0.2 x6 + 0.5 x5 + 0.2 x4 - 0.2 x2 - 0.5 x1 - 0.2 x0.
/// Throws std::invalid_argument unless window.size() == 7.
double filter_output(std::span<const double> window);

struct DipFire {
  Tick tick;        // tick of the centre sample
  double estimate;  // estimate at that tick
};

/// Watches one node's own estimate series, one sample per update.
///
/// The first `warmup` filter outputs only prime last_output. After that the
/// detector fires when the output rises through zero (negative to
/// non-negative) or is exactly zero. A falling crossing marks a peak of the
/// estimate's trajectory and is skipped.
class DipDetector {
 public:
  static constexpr int kDelay = 3;

  explicit DipDetector(int warmup = 3);

  /// Push one sample. Throws ProtocolViolation once the detector has fired.
  std::optional<DipFire> observe(double estimate, Tick tick);

  bool fired() const noexcept { return fired_; }
  std::size_t samples() const noexcept { return count_; }
  std::optional<double> last_output() const noexcept { return last_output_; }

 private:
  std::array<double, 7> values_{};
  std::array<Tick, 7> ticks_{};
  std::size_t count_ = 0;
  int warmup_remaining_;
  std::optional<double> last_output_;
  bool fired_ = false;
};

/// Algorithm 1 stand-by transition: t_c takes the dip estimate, I_S = 1,
/// I_U = I_T = 0, frozen. Throws ProtocolViolation if already frozen.
void freeze_at_dip(NodeState& st, double dip_estimate);

}  // namespace dipsync
