#ifndef TROJANFORGE_LFSR_H_
#define TROJANFORGE_LFSR_H_

#include <cstdint>
#include <vector>

#include "trojanforge/bitvec.h"
#include "trojanforge/trojan.h"

namespace trojanforge {

/// Galois LFSR shape. Taps are 1-based positions; the highest tap must equal
/// the width. The default is the 32-bit register with taps {1, 2, 22, 32}.
class LfsrPolynomial {
 public:
  LfsrPolynomial() : LfsrPolynomial(32, {1, 2, 22, 32}) {}
  LfsrPolynomial(unsigned width, std::vector<unsigned> taps);

  unsigned width() const { return width_; }
  const std::vector<unsigned>& taps() const { return taps_; }

  // Bits flipped when the feedback bit is 1, top position included.
  std::uint64_t toggle_mask() const { return toggle_mask_; }

  bool operator==(const LfsrPolynomial&) const = default;

 private:
  unsigned width_;
  std::vector<unsigned> taps_;  // sorted ascending, unique
  std::uint64_t toggle_mask_;
};

struct LfsrState {
  LfsrPolynomial poly;
  BitVec bits = BitVec(32, 1);
  BitVec seed = BitVec(32, 1);
  // Set once the all-zero payload has been injected; a latched register keeps
  // reloading zero on every later reset.
  bool zero_latched = false;

  bool operator==(const LfsrState&) const = default;
};

/// Power-on state: bits = seed. Throws if the seed is zero or too wide.
LfsrState make_lfsr(const LfsrPolynomial& poly, std::uint64_t seed = 1);

/// Feedback = bit 0; shift right; when feedback is 1 toggle every tap
/// position (which re-injects it at the top). Zero maps to zero.
LfsrState lfsr_step(const LfsrState& state);

/// Raw update on a bare word; the hot loop behind lfsr_step.
inline std::uint64_t lfsr_next(std::uint64_t bits, std::uint64_t toggle_mask) {
  const std::uint64_t feedback = bits & 1U;
  return (bits >> 1) ^ (toggle_mask & (0 - feedback));
}

struct LfsrTrojan {
  TriggerSpec trigger;  // must be a ResetBitTrigger within the width
};

struct LfsrResetResult {
  LfsrState state;
  TriggerState trigger_state;
  bool fired = false;
};

/// Golden reset: reload the seed.
LfsrState lfsr_reset(const LfsrState& state);

/// Trojaned reset: if the pre-reset register has a 1 at the trigger position
/// (and the counter gate passes), load all-zero instead of the seed.
LfsrResetResult lfsr_reset(const LfsrState& state, const LfsrTrojan& trojan,
                           TriggerState trigger_state);

LfsrTrojan make_lfsr_trojan(const TrojanConfig& cfg, unsigned width);

/// Least p >= 1 with step^p(seed) == seed, by brute-force iteration.
/// Width is capped at 24; a zero seed is rejected.
std::uint64_t enumerate_period(unsigned width, const std::vector<unsigned>& taps,
                               std::uint64_t seed);

}  // namespace trojanforge

#endif  // TROJANFORGE_LFSR_H_
