#include "trojanforge/trojan.h"

#include <charconv>
#include <vector>

#include "trojanforge/error.h"

namespace trojanforge {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::uint64_t parse_uint(std::string_view text, std::string_view field) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error("trojan field '" + std::string(field) + "': expected an " +
                "unsigned integer, got '" + std::string(text) + "'");
  }
  return value;
}

ReductionOp parse_op(std::string_view text, std::string_view field) {
  if (auto op = parse_reduction_op(text)) return *op;
  throw Error("trojan field '" + std::string(field) + "': unknown reduction " +
              "operator '" + std::string(text) + "'");
}

}  // namespace

bool raw_trigger(const TriggerSpec& spec, const BitVec& observed) {
  return std::visit(
      Overloaded{
          [&](const ReductionTrigger& t) { return reduce(t.op, observed); },
          [&](const ResetBitTrigger& t) {
            if (t.index < 1 || t.index > observed.width()) {
              throw Error("trigger index " + std::to_string(t.index) +
                          " outside observed width " +
                          std::to_string(observed.width()));
            }
            return observed.bit(t.index - 1);
          },
          [&](const FrameFaultTrigger&) {
            if (observed.width() != 2) {
              throw Error("frame-fault trigger observes a 2-bit flag vector");
            }
            return reduce(ReductionOp::kAnd, observed);
          },
      },
      spec.kind);
}

TriggerResult trigger_step(const TriggerSpec& spec, TriggerState state,
                           const BitVec& observed) {
  const bool raw = raw_trigger(spec, observed);
  TriggerResult result;
  result.state.occurrence_count = state.occurrence_count + (raw ? 1 : 0);
  if (spec.activation_threshold <= 1) {
    result.fire = raw;
  } else {
    result.fire =
        raw && result.state.occurrence_count == spec.activation_threshold;
  }
  return result;
}

void validate(const TriggerSpec& spec) {
  if (spec.activation_threshold < 1) {
    throw Error("trojan field 'n': activation threshold must be >= 1");
  }
  if (const auto* t = std::get_if<ResetBitTrigger>(&spec.kind)) {
    if (t->index < 1 || t->index > kMaxWidth) {
      throw Error("trojan field 'index': reset-bit index " +
                  std::to_string(t->index) + " outside 1..64");
    }
  }
}

void validate(const PayloadSpec& payload) {
  if (const auto* s = std::get_if<SwapPacketBits>(&payload)) {
    if (s->byte_index >= 3) {
      throw Error("trojan field 'byte': packet byte index must be < 3");
    }
    if (s->bit_i >= 8 || s->bit_j >= 8) {
      throw Error("trojan field 'i/j': swapped bit indices must be < 8");
    }
  }
  if (const auto* d = std::get_if<DuplicateDataBit>(&payload)) {
    if (d->data_index < 1 || d->data_index > 8) {
      throw Error("trojan field 'dup_bit': data index must be in 1..8");
    }
    if (d->repeat_count < 1) {
      throw Error("trojan field 'r': repeat count must be >= 1");
    }
    if (d->data_index + d->repeat_count - 1 > 8) {
      throw Error("trojan field 'r': duplication runs past data bit 8");
    }
  }
}

std::optional<TrojanConfig> parse_trojan_descriptor(std::string_view text) {
  if (text == "none" || text.empty()) return std::nullopt;

  const auto parts = split(text, ':');
  if (parts.size() < 2) {
    throw Error("trojan field 'kind': expected <kind>:<arg>, got '" +
                std::string(text) + "'");
  }
  const std::string_view kind = parts[0];
  const std::string_view arg = parts[1];

  TrojanConfig cfg;
  std::optional<ReductionOp> dup_op;
  bool prev_fault = false;

  auto reject = [&](std::string_view key) {
    throw Error("trojan field '" + std::string(key) + "': not valid for '" +
                std::string(kind) + "'");
  };

  if (kind == "reduce") {
    cfg.trigger.kind = ReductionTrigger{parse_op(arg, "op")};
    cfg.payload = ComplementOutput{};
  } else if (kind == "resetbit") {
    const auto k = parse_uint(arg, "index");
    cfg.trigger.kind = ResetBitTrigger{static_cast<unsigned>(k)};
    cfg.payload = ForceAllZeroOnReset{};
  } else if (kind == "swap") {
    cfg.trigger.kind = ReductionTrigger{parse_op(arg, "op")};
    cfg.payload = SwapPacketBits{};
  } else if (kind == "ground") {
    cfg.trigger.kind = ReductionTrigger{parse_op(arg, "op")};
    cfg.payload = TrapState{};
  } else if (kind == "dup") {
    const auto k = parse_uint(arg, "dup_bit");
    cfg.trigger.kind = ReductionTrigger{ReductionOp::kXor};
    cfg.payload = DuplicateDataBit{static_cast<unsigned>(k), 1};
  } else {
    throw Error("trojan field 'kind': unknown trojan kind '" +
                std::string(kind) + "'");
  }

  for (std::size_t i = 2; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos) {
      throw Error("trojan field '" + std::string(parts[i]) +
                  "': expected key=value");
    }
    const std::string_view key = parts[i].substr(0, eq);
    const std::string_view value = parts[i].substr(eq + 1);

    if (key == "n") {
      cfg.trigger.activation_threshold = parse_uint(value, "n");
    } else if (key == "mode") {
      auto* p = std::get_if<ComplementOutput>(&cfg.payload);
      if (!p) reject(key);
      if (value == "replicate") {
        p->extend_mode = ExtendMode::kReplicate;
      } else if (value == "zero") {
        p->extend_mode = ExtendMode::kZeroExtend;
      } else {
        throw Error("trojan field 'mode': expected replicate or zero");
      }
    } else if (key == "byte" || key == "i" || key == "j") {
      auto* p = std::get_if<SwapPacketBits>(&cfg.payload);
      if (!p) reject(key);
      const auto v = static_cast<unsigned>(parse_uint(value, key));
      (key == "byte" ? p->byte_index : key == "i" ? p->bit_i : p->bit_j) = v;
    } else if (key == "r") {
      auto* p = std::get_if<DuplicateDataBit>(&cfg.payload);
      if (!p) reject(key);
      p->repeat_count = static_cast<unsigned>(parse_uint(value, "r"));
    } else if (key == "src") {
      if (!std::holds_alternative<DuplicateDataBit>(cfg.payload)) reject(key);
      if (value == "prev_fault") {
        prev_fault = true;
      } else if (value != "shift_xor") {
        throw Error("trojan field 'src': expected shift_xor or prev_fault");
      }
    } else if (key == "op") {
      if (!std::holds_alternative<DuplicateDataBit>(cfg.payload)) reject(key);
      dup_op = parse_op(value, "op");
    } else {
      throw Error("trojan field '" + std::string(key) + "': unknown option");
    }
  }

  if (prev_fault) {
    if (dup_op) {
      throw Error("trojan field 'op': not valid with src=prev_fault");
    }
    cfg.trigger.kind = FrameFaultTrigger{};
  } else if (dup_op) {
    cfg.trigger.kind = ReductionTrigger{*dup_op};
  }

  validate(cfg.trigger);
  validate(cfg.payload);
  return cfg;
}

std::string format_trojan_descriptor(const std::optional<TrojanConfig>& cfg) {
  if (!cfg) return "none";

  auto reduction_op = [&]() {
    const auto* t = std::get_if<ReductionTrigger>(&cfg->trigger.kind);
    return t ? t->op : ReductionOp::kXor;
  };

  std::string out = std::visit(
      Overloaded{
          [&](const ComplementOutput& p) {
            std::string s = "reduce:" + std::string(to_string(reduction_op()));
            if (p.extend_mode == ExtendMode::kZeroExtend) s += ":mode=zero";
            return s;
          },
          [&](const ForceAllZeroOnReset&) {
            const auto* t = std::get_if<ResetBitTrigger>(&cfg->trigger.kind);
            return "resetbit:" + std::to_string(t ? t->index : 0);
          },
          [&](const SwapPacketBits& p) {
            std::string s = "swap:" + std::string(to_string(reduction_op()));
            if (p.byte_index != 0) s += ":byte=" + std::to_string(p.byte_index);
            if (p.bit_i != 0) s += ":i=" + std::to_string(p.bit_i);
            if (p.bit_j != 1) s += ":j=" + std::to_string(p.bit_j);
            return s;
          },
          [&](const TrapState&) {
            return "ground:" + std::string(to_string(reduction_op()));
          },
          [&](const DuplicateDataBit& p) {
            std::string s = "dup:" + std::to_string(p.data_index);
            if (p.repeat_count != 1) s += ":r=" + std::to_string(p.repeat_count);
            if (std::holds_alternative<FrameFaultTrigger>(cfg->trigger.kind)) {
              s += ":src=prev_fault";
            } else if (reduction_op() != ReductionOp::kXor) {
              s += ":op=" + std::string(to_string(reduction_op()));
            }
            return s;
          },
      },
      cfg->payload);

  if (cfg->trigger.activation_threshold != 1) {
    out += ":n=" + std::to_string(cfg->trigger.activation_threshold);
  }
  return out;
}

}  // namespace trojanforge
