#include "dipsync/codec.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dipsync/errors.hpp"

namespace dipsync {

namespace {

constexpr double kMaxWire = static_cast<double>(std::numeric_limits<std::uint32_t>::max());

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int b = 0; b < bytes; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t at, int bytes) {
  std::uint64_t v = 0;
  for (int b = 0; b < bytes; ++b) v |= static_cast<std::uint64_t>(in[at + b]) << (8 * b);
  return v;
}

}  // namespace

std::size_t payload_length(ProtocolKind kind) noexcept {
  switch (kind) {
    case ProtocolKind::SyncBaseline:
    case ProtocolKind::TSAU: return 6;
    case ProtocolKind::UAF: return 7;
    case ProtocolKind::BAF: return 9;
  }
  return 0;
}

std::uint32_t time_to_wire(double seconds) noexcept {
  const double ticks = std::nearbyint(seconds / kWireTickSeconds);
  if (!(ticks > 0.0)) return 0;  // negatives and NaN
  if (ticks >= kMaxWire) return std::numeric_limits<std::uint32_t>::max();
  return static_cast<std::uint32_t>(ticks);
}

double wire_to_time(std::uint32_t ticks) noexcept {
  return static_cast<double>(ticks) * kWireTickSeconds;
}

bool wire_representable(double seconds) noexcept {
  return std::nearbyint(seconds / kWireTickSeconds) <= kMaxWire;
}

std::vector<std::uint8_t> encode(const SyncMessage& msg) {
  std::vector<std::uint8_t> out;
  out.reserve(payload_length(msg.kind));
  put_le(out, msg.sender, 2);
  put_le(out, time_to_wire(msg.time), 4);
  if (msg.kind == ProtocolKind::UAF || msg.kind == ProtocolKind::BAF) put_le(out, msg.s, 1);
  if (msg.kind == ProtocolKind::BAF) put_le(out, msg.c, 2);
  return out;
}

SyncMessage decode(std::span<const std::uint8_t> bytes, ProtocolKind kind) {
  const std::size_t want = payload_length(kind);
  if (bytes.size() != want) {
    throw MalformedMessage(std::string(to_string(kind)) + " payload must be " +
                           std::to_string(want) + " bytes, got " + std::to_string(bytes.size()));
  }
  SyncMessage m;
  m.kind = kind;
  m.sender = static_cast<NodeId>(get_le(bytes, 0, 2));
  m.time = wire_to_time(static_cast<std::uint32_t>(get_le(bytes, 2, 4)));
  if (kind == ProtocolKind::UAF || kind == ProtocolKind::BAF) {
    m.s = static_cast<std::uint8_t>(get_le(bytes, 6, 1));
    if (m.s > 1) throw MalformedMessage("status byte must be 0 or 1");
  }
  if (kind == ProtocolKind::BAF) m.c = static_cast<std::uint16_t>(get_le(bytes, 7, 2));
  return m;
}

}  // namespace dipsync
