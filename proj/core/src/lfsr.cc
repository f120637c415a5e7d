#include "trojanforge/lfsr.h"

#include <algorithm>

#include "trojanforge/error.h"

namespace trojanforge {

LfsrPolynomial::LfsrPolynomial(unsigned width, std::vector<unsigned> taps)
    : width_(width), taps_(std::move(taps)), toggle_mask_(0) {
  if (width_ < 1 || width_ > kMaxWidth) {
    throw Error("lfsr field 'width': " + std::to_string(width_) +
                " outside 1..64");
  }
  std::sort(taps_.begin(), taps_.end());
  taps_.erase(std::unique(taps_.begin(), taps_.end()), taps_.end());
  if (taps_.empty() || taps_.back() != width_) {
    throw Error("lfsr field 'taps': highest tap must equal the width");
  }
  if (taps_.front() < 1) {
    throw Error("lfsr field 'taps': tap positions are 1-based");
  }
  for (unsigned t : taps_) toggle_mask_ |= std::uint64_t{1} << (t - 1);
}

LfsrState make_lfsr(const LfsrPolynomial& poly, std::uint64_t seed) {
  if (seed == 0) throw Error("lfsr field 'seed': seed must be nonzero");
  if ((seed & ~BitVec::mask_for(poly.width())) != 0) {
    throw Error("lfsr field 'seed': seed wider than the register");
  }
  const BitVec s(poly.width(), seed);
  return LfsrState{poly, s, s, false};
}

LfsrState lfsr_step(const LfsrState& state) {
  LfsrState next = state;
  next.bits = BitVec(state.poly.width(),
                     lfsr_next(state.bits.bits(), state.poly.toggle_mask()));
  return next;
}

LfsrState lfsr_reset(const LfsrState& state) {
  LfsrState next = state;
  next.bits = state.seed;
  return next;
}

LfsrResetResult lfsr_reset(const LfsrState& state, const LfsrTrojan& trojan,
                           TriggerState trigger_state) {
  const TriggerResult t = trigger_step(trojan.trigger, trigger_state, state.bits);
  LfsrState next = state;
  if (t.fire || state.zero_latched) {
    next.bits = BitVec::zeros(state.poly.width());
    next.zero_latched = true;
  } else {
    next.bits = state.seed;
  }
  return LfsrResetResult{next, t.state, t.fire};
}

LfsrTrojan make_lfsr_trojan(const TrojanConfig& cfg, unsigned width) {
  const auto* t = std::get_if<ResetBitTrigger>(&cfg.trigger.kind);
  if (!t || !std::holds_alternative<ForceAllZeroOnReset>(cfg.payload)) {
    throw Error("trojan field 'kind': lfsr32 supports only resetbit:<k>");
  }
  if (t->index < 1 || t->index > width) {
    throw Error("trojan field 'trigger_bit': " + std::to_string(t->index) +
                " outside 1.." + std::to_string(width));
  }
  validate(cfg.trigger);
  return LfsrTrojan{cfg.trigger};
}

std::uint64_t enumerate_period(unsigned width, const std::vector<unsigned>& taps,
                               std::uint64_t seed) {
  if (width > 24) {
    throw Error("enumerate_period: width " + std::to_string(width) +
                " too large to iterate (max 24)");
  }
  const LfsrPolynomial poly(width, taps);
  if (seed == 0) {
    throw Error("enumerate_period: seed is zero, period undefined");
  }
  if ((seed & ~BitVec::mask_for(width)) != 0) {
    throw Error("enumerate_period: seed wider than the register");
  }
  const std::uint64_t limit = std::uint64_t{1} << width;
  std::uint64_t bits = seed;
  for (std::uint64_t p = 1; p <= limit; ++p) {
    bits = lfsr_next(bits, poly.toggle_mask());
    if (bits == seed) return p;
  }
  throw Error("enumerate_period: seed never recurs (non-invertible taps)");
}

}  // namespace trojanforge
