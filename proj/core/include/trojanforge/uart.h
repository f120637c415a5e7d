#ifndef TROJANFORGE_UART_H_
#define TROJANFORGE_UART_H_

#include <cstdint>
#include <optional>
#include <string>

#include "trojanforge/bitvec.h"
#include "trojanforge/trojan.h"

namespace trojanforge {

// Serial frame: start (0), eight data bits LSB first, odd parity, stop (1).
// One line bit per step; no oversampling.

struct UartFsmState {
  enum class Kind { kIdle, kData, kDup, kParity, kStop, kDone, kWaitIdle };

  Kind kind = Kind::kIdle;
  unsigned position = 0;   // 1-based data bit about to be received (kData, kDup)
  unsigned remaining = 0;  // duplicated positions left, including this one (kDup)

  static UartFsmState idle() { return {}; }
  static UartFsmState data(unsigned k) { return {Kind::kData, k, 0}; }
  static UartFsmState dup(unsigned k, unsigned r) { return {Kind::kDup, k, r}; }
  static UartFsmState parity() { return {Kind::kParity, 0, 0}; }
  static UartFsmState stop() { return {Kind::kStop, 0, 0}; }
  static UartFsmState done() { return {Kind::kDone, 0, 0}; }
  static UartFsmState wait_idle() { return {Kind::kWaitIdle, 0, 0}; }

  std::string to_string() const;
  bool operator==(const UartFsmState&) const = default;
};

struct FrameFault {
  bool parity_fault = false;
  bool stop_miss = false;

  /// {bit0 = parity_fault, bit1 = stop_miss}, as read by FrameFaultTrigger.
  BitVec as_vector() const {
    return BitVec(2, (parity_fault ? 1U : 0U) | (stop_miss ? 2U : 0U));
  }
  bool operator==(const FrameFault&) const = default;
};

struct UartRx {
  UartFsmState fsm;
  BitVec shift = BitVec::zeros(8);  // new bits enter at bit 7
  unsigned ones_count = 0;          // data + parity ones in the current frame
  bool parity_ok = false;           // latched in PARITY for the STOP decision
  bool last_in_bit = false;         // most recent bit shifted into `shift`
  FrameFault prev_frame_fault;      // faults of the last completed frame
  bool operator==(const UartRx&) const = default;
};

struct UartTrojan {
  TriggerSpec trigger;  // ReductionTrigger over `shift`, or FrameFaultTrigger
  DuplicateDataBit payload;
};

struct UartStepResult {
  UartRx rx;
  bool done = false;
  std::optional<BitVec> byte;
  bool valid = false;
  TriggerState trigger_state;
  bool fired = false;
};

UartStepResult uart_step(const UartRx& rx, bool line);

/// On entry to the configured data position the trigger is evaluated; when it
/// fires, that position and the following repeat_count - 1 shift in the
/// previously received bit. Line bits arriving meanwhile are discarded, so the
/// frame keeps its length.
UartStepResult uart_step(const UartRx& rx, bool line, const UartTrojan& trojan,
                         TriggerState trigger_state);

UartRx uart_reset(const UartRx& rx);

UartTrojan make_uart_trojan(const TrojanConfig& cfg);

/// Odd-parity bit for a payload: data plus parity holds an odd number of ones.
bool odd_parity_bit(std::uint8_t payload);

}  // namespace trojanforge

#endif  // TROJANFORGE_UART_H_
