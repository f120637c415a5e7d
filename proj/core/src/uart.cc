#include "trojanforge/uart.h"

#include <bit>

#include "trojanforge/error.h"

namespace trojanforge {

namespace {

using Kind = UartFsmState::Kind;

void shift_in(UartRx& rx, bool bit) {
  rx.shift = BitVec(8, (rx.shift.bits() >> 1) | (bit ? 0x80U : 0U));
  rx.last_in_bit = bit;
  rx.ones_count += bit ? 1 : 0;
}

struct Stepper {
  const UartTrojan* trojan;
  TriggerState trigger_state;
  bool fired = false;

  // Moves into data position k, diverting into the duplication state when the
  // trojan watches this position and its trigger fires.
  UartFsmState enter_data(const UartRx& next, unsigned k) {
    if (trojan && trojan->payload.data_index == k) {
      const BitVec observed =
          std::holds_alternative<FrameFaultTrigger>(trojan->trigger.kind)
              ? next.prev_frame_fault.as_vector()
              : next.shift;
      const TriggerResult t =
          trigger_step(trojan->trigger, trigger_state, observed);
      trigger_state = t.state;
      if (t.fire) {
        fired = true;
        return UartFsmState::dup(k, trojan->payload.repeat_count);
      }
    }
    return UartFsmState::data(k);
  }

  UartFsmState after_position(const UartRx& next, unsigned k) {
    return k == 8 ? UartFsmState::parity() : enter_data(next, k + 1);
  }

  UartStepResult step(const UartRx& rx, bool line) {
    UartStepResult r;
    UartRx next = rx;
    switch (rx.fsm.kind) {
      case Kind::kIdle:
      case Kind::kDone:
        if (!line) {
          next.shift = BitVec::zeros(8);
          next.ones_count = 0;
          next.parity_ok = false;
          next.fsm = enter_data(next, 1);
        } else {
          next.fsm = UartFsmState::idle();
        }
        break;
      case Kind::kData:
        shift_in(next, line);
        next.fsm = after_position(next, rx.fsm.position);
        break;
      case Kind::kDup:
        shift_in(next, rx.last_in_bit);
        if (rx.fsm.remaining > 1) {
          next.fsm = UartFsmState::dup(rx.fsm.position + 1, rx.fsm.remaining - 1);
        } else {
          next.fsm = after_position(next, rx.fsm.position);
        }
        break;
      case Kind::kParity:
        next.ones_count += line ? 1 : 0;
        next.parity_ok = (next.ones_count & 1U) != 0;
        next.fsm = UartFsmState::stop();
        break;
      case Kind::kStop:
        next.prev_frame_fault = FrameFault{!rx.parity_ok, !line};
        if (line) {
          next.fsm = UartFsmState::done();
          r.done = true;
          r.byte = next.shift;
          r.valid = rx.parity_ok;
        } else {
          next.fsm = UartFsmState::wait_idle();
        }
        break;
      case Kind::kWaitIdle:
        next.fsm = line ? UartFsmState::idle() : UartFsmState::wait_idle();
        break;
    }
    r.rx = next;
    r.trigger_state = trigger_state;
    r.fired = fired;
    return r;
  }
};

}  // namespace

std::string UartFsmState::to_string() const {
  switch (kind) {
    case Kind::kIdle:
      return "IDLE";
    case Kind::kData:
      return "DATA(" + std::to_string(position) + ")";
    case Kind::kDup:
      return "DUP(" + std::to_string(position) + "," +
             std::to_string(remaining) + ")";
    case Kind::kParity:
      return "PARITY";
    case Kind::kStop:
      return "STOP";
    case Kind::kDone:
      return "DONE";
    case Kind::kWaitIdle:
      return "WAIT_IDLE";
  }
  return "?";
}

UartStepResult uart_step(const UartRx& rx, bool line) {
  return Stepper{nullptr, {}}.step(rx, line);
}

UartStepResult uart_step(const UartRx& rx, bool line, const UartTrojan& trojan,
                         TriggerState trigger_state) {
  return Stepper{&trojan, trigger_state}.step(rx, line);
}

UartRx uart_reset(const UartRx&) { return UartRx{}; }

UartTrojan make_uart_trojan(const TrojanConfig& cfg) {
  const auto* payload = std::get_if<DuplicateDataBit>(&cfg.payload);
  if (!payload) {
    throw Error("trojan field 'kind': uart_rx supports only dup:<k>");
  }
  if (std::holds_alternative<ResetBitTrigger>(cfg.trigger.kind)) {
    throw Error("trojan field 'src': uart_rx trigger must read the shift "
                "register or the previous frame's faults");
  }
  validate(cfg.trigger);
  validate(cfg.payload);
  return UartTrojan{cfg.trigger, *payload};
}

bool odd_parity_bit(std::uint8_t payload) {
  return (std::popcount(payload) & 1) == 0;
}

}  // namespace trojanforge
