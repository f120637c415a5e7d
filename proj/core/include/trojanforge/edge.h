#ifndef TROJANFORGE_EDGE_H_
#define TROJANFORGE_EDGE_H_

#include "trojanforge/bitvec.h"
#include "trojanforge/trojan.h"

namespace trojanforge {

inline constexpr unsigned kEdgeWidth = 8;

// 8-bit dual edge detector: `q` holds the previous input sample and `out`
// is the registered dual-edge vector. Both power up at zero.
struct EdgeState {
  BitVec q = BitVec::zeros(kEdgeWidth);
  BitVec out = BitVec::zeros(kEdgeWidth);
  bool operator==(const EdgeState&) const = default;
};

struct EdgeTrojan {
  TriggerSpec trigger;  // must be a ReductionTrigger
  ComplementOutput payload;
};

struct EdgeStepResult {
  EdgeState state;
  TriggerState trigger_state;
  bool fired = false;
};

/// Golden clock edge: out' = q ^ in, q' = in.
EdgeState edge_step(const EdgeState& state, const BitVec& in);

/// Trojaned clock edge. The trigger reads the registered output as it stands
/// before the edge; when it fires, the widened trigger bit is XORed into the
/// next output.
EdgeStepResult edge_step(const EdgeState& state, const BitVec& in,
                         const EdgeTrojan& trojan, TriggerState trigger_state);

EdgeTrojan make_edge_trojan(const TrojanConfig& cfg);

}  // namespace trojanforge

#endif  // TROJANFORGE_EDGE_H_
