#ifndef TROJANFORGE_TROJAN_H_
#define TROJANFORGE_TROJAN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "trojanforge/bitvec.h"

namespace trojanforge {

// Trigger kinds --------------------------------------------------------------

/// Fires when the reduction of the observed vector is 1.
struct ReductionTrigger {
  ReductionOp op = ReductionOp::kXor;
  bool operator==(const ReductionTrigger&) const = default;
};

/// Fires when the observed register has a 1 at `index` (1-based).
struct ResetBitTrigger {
  unsigned index = 1;
  bool operator==(const ResetBitTrigger&) const = default;
};

/// Fires when the previous serial frame had both a parity fault and a missing
/// stop bit. The observed vector is {bit0 = parity_fault, bit1 = stop_miss}.
struct FrameFaultTrigger {
  bool operator==(const FrameFaultTrigger&) const = default;
};

using TriggerKind =
    std::variant<ReductionTrigger, ResetBitTrigger, FrameFaultTrigger>;

struct TriggerSpec {
  TriggerKind kind = ReductionTrigger{};
  /// Raw occurrence on which a gated trigger fires; 1 means every occurrence.
  std::uint64_t activation_threshold = 1;
  bool operator==(const TriggerSpec&) const = default;
};

struct TriggerState {
  std::uint64_t occurrence_count = 0;
  bool operator==(const TriggerState&) const = default;
};

struct TriggerResult {
  bool fire = false;
  TriggerState state;
};

/// Raw trigger value before the counter gate.
bool raw_trigger(const TriggerSpec& spec, const BitVec& observed);

/// Advances the occurrence counter by the raw trigger value. With a threshold
/// of 1 the result fires on every raw occurrence; above 1 it fires exactly
/// once, on the occurrence that brings the count to the threshold.
TriggerResult trigger_step(const TriggerSpec& spec, TriggerState state,
                           const BitVec& observed);

void validate(const TriggerSpec& spec);

// Payloads -------------------------------------------------------------------

struct ComplementOutput {
  ExtendMode extend_mode = ExtendMode::kReplicate;
  bool operator==(const ComplementOutput&) const = default;
};

struct ForceAllZeroOnReset {
  bool operator==(const ForceAllZeroOnReset&) const = default;
};

struct SwapPacketBits {
  unsigned byte_index = 0;
  unsigned bit_i = 0;
  unsigned bit_j = 1;
  bool operator==(const SwapPacketBits&) const = default;
};

struct TrapState {
  bool operator==(const TrapState&) const = default;
};

struct DuplicateDataBit {
  unsigned data_index = 5;  // 1-based data bit, 1..8
  unsigned repeat_count = 1;
  bool operator==(const DuplicateDataBit&) const = default;
};

using PayloadSpec = std::variant<ComplementOutput, ForceAllZeroOnReset,
                                 SwapPacketBits, TrapState, DuplicateDataBit>;

void validate(const PayloadSpec& payload);

// Complete trojan ------------------------------------------------------------

struct TrojanConfig {
  TriggerSpec trigger;
  PayloadSpec payload;
  bool operator==(const TrojanConfig&) const = default;
};

/// Parses the descriptor syntax
///
///   none
///   reduce:<op>[:n=<N>][:mode=replicate|zero]
///   resetbit:<k>[:n=<N>]
///   swap:<op>[:n=<N>][:byte=<b>][:i=<i>][:j=<j>]
///   ground:<op>[:n=<N>]
///   dup:<k>[:r=<R>][:src=shift_xor|prev_fault][:op=<op>][:n=<N>]
///
/// where <op> is one of and, or, xor, nand, nor, xnor. Returns nullopt for
/// `none`. Throws Error naming the offending field otherwise.
std::optional<TrojanConfig> parse_trojan_descriptor(std::string_view text);

/// Canonical descriptor; round-trips through parse_trojan_descriptor.
std::string format_trojan_descriptor(const std::optional<TrojanConfig>& cfg);

}  // namespace trojanforge

#endif  // TROJANFORGE_TROJAN_H_
