#include "trojanforge/mouse.h"

#include <utility>

#include "trojanforge/error.h"

namespace trojanforge {

namespace {

void require_byte(const BitVec& in) {
  if (in.width() != 8) {
    throw Error("mouse_ps2 input width " + std::to_string(in.width()) +
                ", expected 8");
  }
}

MouseRx advance(const MouseRx& rx, std::uint8_t byte) {
  MouseRx next = rx;
  switch (rx.fsm) {
    case MouseFsmState::kByte1:
    case MouseFsmState::kDone:
      if (byte & kMouseStartBit) {
        next.latches[0] = byte;
        next.fsm = MouseFsmState::kByte2;
      } else {
        next.fsm = MouseFsmState::kByte1;
      }
      break;
    case MouseFsmState::kByte2:
      next.latches[1] = byte;
      next.fsm = MouseFsmState::kByte3;
      break;
    case MouseFsmState::kByte3:
      next.latches[2] = byte;
      next.fsm = MouseFsmState::kDone;
      break;
    case MouseFsmState::kTrojanGround:
      break;
  }
  return next;
}

MouseStepResult emit(MouseRx next) {
  MouseStepResult r;
  r.done = next.fsm == MouseFsmState::kDone;
  if (r.done) r.packet = MousePacket{next.latches};
  r.rx = next;
  return r;
}

}  // namespace

std::string_view to_string(MouseFsmState s) {
  switch (s) {
    case MouseFsmState::kByte1:
      return "BYTE1";
    case MouseFsmState::kByte2:
      return "BYTE2";
    case MouseFsmState::kByte3:
      return "BYTE3";
    case MouseFsmState::kDone:
      return "DONE";
    case MouseFsmState::kTrojanGround:
      return "TROJAN_GROUND";
  }
  return "?";
}

BitVec MousePacket::as_vector() const {
  return BitVec(24, std::uint64_t{bytes[0]} | std::uint64_t{bytes[1]} << 8 |
                        std::uint64_t{bytes[2]} << 16);
}

MouseStepResult mouse_step(const MouseRx& rx, const BitVec& in) {
  require_byte(in);
  return emit(advance(rx, static_cast<std::uint8_t>(in.bits())));
}

MouseStepResult mouse_step(const MouseRx& rx, const BitVec& in,
                           const MouseTrojan& trojan,
                           TriggerState trigger_state) {
  require_byte(in);
  const auto byte = static_cast<std::uint8_t>(in.bits());

  if (std::holds_alternative<TrapState>(trojan.payload)) {
    // Trojan Ground: judged on the packet just emitted, as the FSM leaves DONE.
    if (rx.fsm == MouseFsmState::kDone) {
      const MousePacket emitted{rx.latches};
      const TriggerResult t =
          trigger_step(trojan.trigger, trigger_state, emitted.as_vector());
      if (t.fire) {
        MouseRx trapped = rx;
        trapped.fsm = MouseFsmState::kTrojanGround;
        MouseStepResult r = emit(trapped);
        r.trigger_state = t.state;
        r.fired = true;
        return r;
      }
      trigger_state = t.state;
    }
    MouseStepResult r = emit(advance(rx, byte));
    r.trigger_state = trigger_state;
    return r;
  }

  const auto& swap = std::get<SwapPacketBits>(trojan.payload);
  MouseStepResult r = emit(advance(rx, byte));
  r.trigger_state = trigger_state;
  if (r.packet) {
    const TriggerResult t =
        trigger_step(trojan.trigger, trigger_state, r.packet->as_vector());
    r.trigger_state = t.state;
    r.fired = t.fire;
    if (t.fire) {
      std::uint8_t& target = r.packet->bytes[swap.byte_index];
      const bool bi = (target >> swap.bit_i) & 1U;
      const bool bj = (target >> swap.bit_j) & 1U;
      if (bi != bj) {
        target ^= static_cast<std::uint8_t>((1U << swap.bit_i) |
                                            (1U << swap.bit_j));
      }
    }
  }
  return r;
}

MouseRx mouse_reset(const MouseRx&) { return MouseRx{}; }

MouseTrojan make_mouse_trojan(const TrojanConfig& cfg) {
  if (!std::holds_alternative<ReductionTrigger>(cfg.trigger.kind)) {
    throw Error("trojan field 'kind': mouse_ps2 needs a reduction trigger");
  }
  validate(cfg.trigger);
  validate(cfg.payload);
  if (const auto* s = std::get_if<SwapPacketBits>(&cfg.payload)) {
    return MouseTrojan{cfg.trigger, *s};
  }
  if (std::holds_alternative<TrapState>(cfg.payload)) {
    return MouseTrojan{cfg.trigger, TrapState{}};
  }
  throw Error(
      "trojan field 'kind': mouse_ps2 supports only swap:<op> or ground:<op>");
}

}  // namespace trojanforge
