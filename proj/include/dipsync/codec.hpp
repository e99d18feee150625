#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dipsync/protocol.hpp"

namespace dipsync {

// Little-endian payloads:
//   [sender:2][time:4]               TSAU (and baseline)  6 bytes
//   [sender:2][time:4][s:1]          UAF                  7 bytes
//   [sender:2][time:4][s:1][c:2]     BAF                  9 bytes
// time is an unsigned count of microsecond ticks.

constexpr double kWireTickSeconds = 1e-6;

std::size_t payload_length(ProtocolKind kind) noexcept;

/// Nearest microsecond tick, saturating to [0, 2^32 - 1].
std::uint32_t time_to_wire(double seconds) noexcept;
double wire_to_time(std::uint32_t ticks) noexcept;
/// True if the time would not saturate on the high side.
bool wire_representable(double seconds) noexcept;

std::vector<std::uint8_t> encode(const SyncMessage& msg);
/// Throws MalformedMessage on a length that does not match kind.
SyncMessage decode(std::span<const std::uint8_t> bytes, ProtocolKind kind);

}  // namespace dipsync
