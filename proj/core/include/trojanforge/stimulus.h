#ifndef TROJANFORGE_STIMULUS_H_
#define TROJANFORGE_STIMULUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace trojanforge {

enum class DesignId { kEdge8, kLfsr32, kMousePs2, kUartRx };

/// edge8, lfsr32, mouse_ps2, uart_rx
std::string_view to_string(DesignId id);
std::optional<DesignId> parse_design_id(std::string_view name);

/// SplitMix64. The exact constants are part of the trace reproducibility
/// contract; do not swap in a different engine.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, n) for n >= 1, by rejection.
  std::uint64_t below(std::uint64_t n);

  bool chance(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

/// One clock's worth of input. edge8 and mouse_ps2 use `value` as a byte,
/// uart_rx uses its low bit as the line level, lfsr32 and mouse_ps2 use
/// `reset`.
struct StimulusEntry {
  std::uint8_t value = 0;
  bool reset = false;
  bool operator==(const StimulusEntry&) const = default;
};

struct StimulusTrace {
  DesignId design = DesignId::kEdge8;
  std::vector<StimulusEntry> entries;
  bool operator==(const StimulusTrace&) const = default;
};

// Generators -----------------------------------------------------------------

/// Independent uniform draws per cycle: a byte (edge8, mouse_ps2), a reset
/// flag (lfsr32) or a line bit (uart_rx).
struct UniformRandom {
  DesignId design = DesignId::kEdge8;
};

/// lfsr32 reset pulses of `reset_hold` cycles. Gaps between pulses are drawn
/// uniformly from [1, 2 * reset_period - 1], so their mean is reset_period.
struct LfsrResetSchedule {
  std::uint64_t reset_period = 100;
  std::uint64_t reset_hold = 1;
};

/// Valid mouse packets (byte0 bit 3 forced high). Before each packet a noise
/// byte with bit 3 clear is inserted with probability `noise_probability`.
struct MouseStream {
  double noise_probability = 0.0;
};

/// Odd-parity serial frames with random payloads, each followed by `gap_bits`
/// idle-high bits. Parity is flipped and the stop bit dropped independently
/// with the given probabilities.
struct UartFrames {
  double fault_parity_prob = 0.0;
  double fault_stop_prob = 0.0;
  unsigned gap_bits = 1;
};

using GeneratorKind =
    std::variant<UniformRandom, LfsrResetSchedule, MouseStream, UartFrames>;

struct GeneratorSpec {
  GeneratorKind kind;
  std::uint64_t seed = 1;
  std::uint64_t cycles = 1;
};

DesignId design_of(const GeneratorSpec& spec);
void validate(const GeneratorSpec& spec);

/// Deterministic in (kind, parameters, seed, cycles).
StimulusTrace generate(const GeneratorSpec& spec);

/// Frame bits for one serial byte: start, data LSB first, odd parity, stop.
std::vector<bool> uart_frame_bits(std::uint8_t payload, bool flip_parity = false,
                                  bool drop_stop = false);

// Trace files ----------------------------------------------------------------
//
//   #design <id> cycles <n>
//   <entry>            one per line, n lines
//
// with entries `a5` (edge8), `r0`/`r1` (lfsr32), `08 r0` (mouse_ps2) and
// `0`/`1` (uart_rx).

void validate(const StimulusTrace& trace);
void write_trace(std::ostream& out, const StimulusTrace& trace);
std::string format_trace(const StimulusTrace& trace);
StimulusTrace read_trace(std::istream& in);
StimulusTrace parse_trace(std::string_view text);

void save_trace(const std::filesystem::path& path, const StimulusTrace& trace);
StimulusTrace load_trace(const std::filesystem::path& path);

}  // namespace trojanforge

#endif  // TROJANFORGE_STIMULUS_H_
