#ifndef TROJANFORGE_MOUSE_H_
#define TROJANFORGE_MOUSE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "trojanforge/bitvec.h"
#include "trojanforge/trojan.h"

namespace trojanforge {

enum class MouseFsmState { kByte1, kByte2, kByte3, kDone, kTrojanGround };

std::string_view to_string(MouseFsmState s);

/// Three-byte PS/2 movement packet.
///
///   byte0: Y-ovf X-ovf Y-sign X-sign 1 middle right left   (bit 7 .. bit 0)
///   byte1: X movement
///   byte2: Y movement
struct MousePacket {
  std::array<std::uint8_t, 3> bytes{};

  std::uint8_t flags() const { return bytes[0]; }
  bool left() const { return bytes[0] & 0x01; }
  bool right() const { return bytes[0] & 0x02; }
  bool middle() const { return bytes[0] & 0x04; }

  /// 24-bit concatenation byte2:byte1:byte0.
  BitVec as_vector() const;

  bool operator==(const MousePacket&) const = default;
};

inline constexpr std::uint8_t kMouseStartBit = 0x08;

struct MouseRx {
  MouseFsmState fsm = MouseFsmState::kByte1;
  std::array<std::uint8_t, 3> latches{};
  bool operator==(const MouseRx&) const = default;
};

struct MouseTrojan {
  TriggerSpec trigger;  // ReductionTrigger over the 24-bit packet
  std::variant<SwapPacketBits, TrapState> payload;
};

/// Outputs are sampled after the clock edge: `done` is high on the step that
/// latches the third byte, and `packet` carries the latched bytes then.
struct MouseStepResult {
  MouseRx rx;
  bool done = false;
  std::optional<MousePacket> packet;
  TriggerState trigger_state;
  bool fired = false;
};

MouseStepResult mouse_step(const MouseRx& rx, const BitVec& in);
MouseStepResult mouse_step(const MouseRx& rx, const BitVec& in,
                           const MouseTrojan& trojan,
                           TriggerState trigger_state);

/// Back to BYTE1 with cleared latches; the only way out of TROJAN_GROUND.
MouseRx mouse_reset(const MouseRx& rx);

MouseTrojan make_mouse_trojan(const TrojanConfig& cfg);

}  // namespace trojanforge

#endif  // TROJANFORGE_MOUSE_H_
