#include "trojanforge/edge.h"

#include "trojanforge/error.h"

namespace trojanforge {

namespace {

void require_input_width(const BitVec& in) {
  if (in.width() != kEdgeWidth) {
    throw Error("edge8 input width " + std::to_string(in.width()) +
                ", expected 8");
  }
}

}  // namespace

EdgeState edge_step(const EdgeState& state, const BitVec& in) {
  require_input_width(in);
  return EdgeState{in, state.q ^ in};
}

EdgeStepResult edge_step(const EdgeState& state, const BitVec& in,
                         const EdgeTrojan& trojan,
                         TriggerState trigger_state) {
  require_input_width(in);
  const TriggerResult t = trigger_step(trojan.trigger, trigger_state, state.out);
  const BitVec corrupt = extend(t.fire, kEdgeWidth, trojan.payload.extend_mode);
  return EdgeStepResult{EdgeState{in, state.q ^ in ^ corrupt}, t.state, t.fire};
}

EdgeTrojan make_edge_trojan(const TrojanConfig& cfg) {
  if (!std::holds_alternative<ReductionTrigger>(cfg.trigger.kind)) {
    throw Error("trojan field 'kind': edge8 needs a reduction trigger");
  }
  const auto* payload = std::get_if<ComplementOutput>(&cfg.payload);
  if (!payload) {
    throw Error("trojan field 'kind': edge8 supports only reduce:<op>");
  }
  validate(cfg.trigger);
  return EdgeTrojan{cfg.trigger, *payload};
}

}  // namespace trojanforge
