#include "trojanforge/stimulus.h"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "trojanforge/error.h"
#include "trojanforge/uart.h"

namespace trojanforge {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_probability(double p, std::string_view field) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error("generator field '" + std::string(field) +
                "': probability must be in [0, 1]");
  }
}

std::vector<StimulusEntry> uniform_entries(DesignId design, std::uint64_t cycles,
                                           SplitMix64& rng) {
  std::vector<StimulusEntry> out(cycles);
  for (auto& e : out) {
    const std::uint64_t r = rng.next();
    switch (design) {
      case DesignId::kEdge8:
      case DesignId::kMousePs2:
        e.value = static_cast<std::uint8_t>(r);
        break;
      case DesignId::kLfsr32:
        e.reset = r & 1U;
        break;
      case DesignId::kUartRx:
        e.value = static_cast<std::uint8_t>(r & 1U);
        break;
    }
  }
  return out;
}

std::vector<StimulusEntry> reset_schedule(const LfsrResetSchedule& s,
                                          std::uint64_t cycles,
                                          SplitMix64& rng) {
  std::vector<StimulusEntry> out(cycles);
  auto draw_gap = [&] { return 1 + rng.below(2 * s.reset_period - 1); };
  std::uint64_t t = draw_gap();
  while (t < cycles) {
    for (std::uint64_t h = 0; h < s.reset_hold && t < cycles; ++h, ++t) {
      out[t].reset = true;
    }
    t += draw_gap();
  }
  return out;
}

std::vector<StimulusEntry> mouse_stream(const MouseStream& s,
                                        std::uint64_t cycles, SplitMix64& rng) {
  std::vector<StimulusEntry> out;
  out.reserve(cycles + 4);
  while (out.size() < cycles) {
    if (rng.chance(s.noise_probability)) {
      out.push_back({static_cast<std::uint8_t>(rng.next() & 0xF7U), false});
    }
    out.push_back({static_cast<std::uint8_t>(rng.next() | 0x08U), false});
    out.push_back({static_cast<std::uint8_t>(rng.next()), false});
    out.push_back({static_cast<std::uint8_t>(rng.next()), false});
  }
  out.resize(cycles);
  return out;
}

std::vector<StimulusEntry> uart_frames(const UartFrames& s, std::uint64_t cycles,
                                       SplitMix64& rng) {
  std::vector<StimulusEntry> out;
  out.reserve(cycles + 11 + s.gap_bits);
  while (out.size() < cycles) {
    const auto payload = static_cast<std::uint8_t>(rng.next());
    const bool flip = rng.chance(s.fault_parity_prob);
    const bool drop = rng.chance(s.fault_stop_prob);
    for (bool b : uart_frame_bits(payload, flip, drop)) {
      out.push_back({static_cast<std::uint8_t>(b), false});
    }
    for (unsigned g = 0; g < s.gap_bits; ++g) out.push_back({1, false});
  }
  out.resize(cycles);
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

bool parse_reset_flag(std::string_view s, bool& reset) {
  if (s == "r0") {
    reset = false;
  } else if (s == "r1") {
    reset = true;
  } else {
    return false;
  }
  return true;
}

bool parse_byte(std::string_view s, std::uint8_t& value) {
  if (s.size() != 2) return false;
  const int hi = hex_digit(s[0]);
  const int lo = hex_digit(s[1]);
  if (hi < 0 || lo < 0) return false;
  value = static_cast<std::uint8_t>(hi * 16 + lo);
  return true;
}

StimulusEntry parse_entry(DesignId design, std::string_view s,
                          std::size_t line_no) {
  StimulusEntry e;
  bool ok = false;
  switch (design) {
    case DesignId::kEdge8:
      ok = parse_byte(s, e.value);
      break;
    case DesignId::kLfsr32:
      ok = parse_reset_flag(s, e.reset);
      break;
    case DesignId::kMousePs2: {
      const auto sp = s.find(' ');
      if (sp == std::string_view::npos) {
        ok = parse_byte(s, e.value);
      } else {
        ok = parse_byte(s.substr(0, sp), e.value) &&
             parse_reset_flag(trim(s.substr(sp + 1)), e.reset);
      }
      break;
    }
    case DesignId::kUartRx:
      ok = s == "0" || s == "1";
      e.value = s == "1" ? 1 : 0;
      break;
  }
  if (!ok) {
    throw Error("trace line " + std::to_string(line_no) + ": malformed " +
                std::string(to_string(design)) + " entry '" + std::string(s) +
                "'");
  }
  return e;
}

}  // namespace

std::string_view to_string(DesignId id) {
  switch (id) {
    case DesignId::kEdge8:
      return "edge8";
    case DesignId::kLfsr32:
      return "lfsr32";
    case DesignId::kMousePs2:
      return "mouse_ps2";
    case DesignId::kUartRx:
      return "uart_rx";
  }
  return "?";
}

std::optional<DesignId> parse_design_id(std::string_view name) {
  for (DesignId id : {DesignId::kEdge8, DesignId::kLfsr32, DesignId::kMousePs2,
                      DesignId::kUartRx}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return r % n;
}

DesignId design_of(const GeneratorSpec& spec) {
  return std::visit(Overloaded{
                        [](const UniformRandom& u) { return u.design; },
                        [](const LfsrResetSchedule&) { return DesignId::kLfsr32; },
                        [](const MouseStream&) { return DesignId::kMousePs2; },
                        [](const UartFrames&) { return DesignId::kUartRx; },
                    },
                    spec.kind);
}

void validate(const GeneratorSpec& spec) {
  if (spec.cycles < 1) throw Error("generator field 'cycles': must be >= 1");
  std::visit(Overloaded{
                 [](const UniformRandom&) {},
                 [](const LfsrResetSchedule& s) {
                   if (s.reset_period < 1) {
                     throw Error("generator field 'reset_period': must be >= 1");
                   }
                   if (s.reset_hold < 1) {
                     throw Error("generator field 'reset_hold': must be >= 1");
                   }
                 },
                 [](const MouseStream& s) {
                   require_probability(s.noise_probability, "noise_probability");
                 },
                 [](const UartFrames& s) {
                   require_probability(s.fault_parity_prob, "fault_parity_prob");
                   require_probability(s.fault_stop_prob, "fault_stop_prob");
                 },
             },
             spec.kind);
}

StimulusTrace generate(const GeneratorSpec& spec) {
  validate(spec);
  SplitMix64 rng(spec.seed);
  StimulusTrace trace;
  trace.design = design_of(spec);
  trace.entries = std::visit(
      Overloaded{
          [&](const UniformRandom& u) {
            return uniform_entries(u.design, spec.cycles, rng);
          },
          [&](const LfsrResetSchedule& s) {
            return reset_schedule(s, spec.cycles, rng);
          },
          [&](const MouseStream& s) { return mouse_stream(s, spec.cycles, rng); },
          [&](const UartFrames& s) { return uart_frames(s, spec.cycles, rng); },
      },
      spec.kind);
  return trace;
}

std::vector<bool> uart_frame_bits(std::uint8_t payload, bool flip_parity,
                                  bool drop_stop) {
  std::vector<bool> bits;
  bits.reserve(11);
  bits.push_back(false);
  for (unsigned i = 0; i < 8; ++i) bits.push_back((payload >> i) & 1U);
  bits.push_back(odd_parity_bit(payload) != flip_parity);
  bits.push_back(!drop_stop);
  return bits;
}

void validate(const StimulusTrace& trace) {
  for (std::size_t i = 0; i < trace.entries.size(); ++i) {
    const auto& e = trace.entries[i];
    const bool ok = [&] {
      switch (trace.design) {
        case DesignId::kEdge8:
        case DesignId::kUartRx:
          if (e.reset) return false;
          return trace.design != DesignId::kUartRx || e.value <= 1;
        case DesignId::kLfsr32:
          return e.value == 0;
        case DesignId::kMousePs2:
          return true;
      }
      return false;
    }();
    if (!ok) {
      throw Error("trace entry " + std::to_string(i) + ": not well-formed for " +
                  std::string(to_string(trace.design)));
    }
  }
}

void write_trace(std::ostream& out, const StimulusTrace& trace) {
  validate(trace);
  out << "#design " << to_string(trace.design) << " cycles "
      << trace.entries.size() << '\n';
  char buf[8];
  for (const auto& e : trace.entries) {
    switch (trace.design) {
      case DesignId::kEdge8:
        std::snprintf(buf, sizeof buf, "%02x", e.value);
        out << buf << '\n';
        break;
      case DesignId::kLfsr32:
        out << (e.reset ? "r1" : "r0") << '\n';
        break;
      case DesignId::kMousePs2:
        std::snprintf(buf, sizeof buf, "%02x", e.value);
        out << buf << (e.reset ? " r1" : " r0") << '\n';
        break;
      case DesignId::kUartRx:
        out << (e.value ? '1' : '0') << '\n';
        break;
    }
  }
}

std::string format_trace(const StimulusTrace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

StimulusTrace read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("trace: empty input");

  std::istringstream header{std::string(trim(line))};
  std::string tag, id, cycles_kw, extra;
  long long cycles = -1;
  if (!(header >> tag >> id >> cycles_kw >> cycles) || tag != "#design" ||
      cycles_kw != "cycles" || cycles < 0 || (header >> extra)) {
    throw Error("trace line 1: expected '#design <id> cycles <n>'");
  }
  const auto design = parse_design_id(id);
  if (!design) throw Error("trace line 1: unknown design '" + id + "'");

  StimulusTrace trace;
  trace.design = *design;
  trace.entries.reserve(static_cast<std::size_t>(cycles));
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view s = trim(line);
    if (s.empty()) {
      // Blank lines are only allowed as trailing padding.
      std::string rest;
      while (std::getline(in, rest)) {
        if (!trim(rest).empty()) {
          throw Error("trace line " + std::to_string(line_no) +
                      ": blank line inside trace");
        }
      }
      break;
    }
    trace.entries.push_back(parse_entry(*design, s, line_no));
  }
  if (trace.entries.size() != static_cast<std::size_t>(cycles)) {
    throw Error("trace: header declares " + std::to_string(cycles) +
                " cycles but " + std::to_string(trace.entries.size()) +
                " entries follow");
  }
  return trace;
}

StimulusTrace parse_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_trace(in);
}

void save_trace(const std::filesystem::path& path, const StimulusTrace& trace) {
  std::ofstream out(path);
  if (!out) throw Error("trace: cannot open '" + path.string() + "' for writing");
  write_trace(out, trace);
  if (!out) throw Error("trace: write to '" + path.string() + "' failed");
}

StimulusTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("trace: cannot open '" + path.string() + "'");
  return read_trace(in);
}

}  // namespace trojanforge
