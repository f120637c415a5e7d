#ifndef TROJANFORGE_HARNESS_H_
#define TROJANFORGE_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "trojanforge/lfsr.h"
#include "trojanforge/stimulus.h"
#include "trojanforge/trojan.h"

namespace trojanforge {

struct DesignConfig {
  DesignId design = DesignId::kEdge8;
  // lfsr32 only.
  LfsrPolynomial lfsr_poly;
  std::uint64_t lfsr_seed = 1;
};

/// Tallies from one lockstep golden-vs-trojan run.
///
/// Per design:
///   edge8     value_mismatches = cycles whose output registers differ
///   lfsr32    value_mismatches = cycles whose full states differ
///   mouse_ps2 value_mismatches = emitted packets that differ,
///             validation_errors = golden packets the trojaned run never emitted
///   uart_rx   value_mismatches = received bytes that differ,
///             validation_errors = valid-flag disagreements
///
/// error_rate divides the error total by `cycles` (edge8, lfsr32) or by the
/// golden event count (mouse_ps2, uart_rx); an empty denominator gives 0.
struct DiffReport {
  DesignId design = DesignId::kEdge8;
  std::string trojan;
  std::uint64_t cycles = 0;
  std::uint64_t value_mismatches = 0;
  std::uint64_t validation_errors = 0;
  std::optional<std::uint64_t> first_trigger_cycle;
  std::uint64_t events = 0;  // golden done events (mouse_ps2, uart_rx)
  double error_rate = 0.0;

  std::uint64_t errors() const { return value_mismatches + validation_errors; }
  bool operator==(const DiffReport&) const = default;
};

/// Runs golden and trojaned instances from identical initial states over the
/// same trace. With no trojan the second instance is golden too.
DiffReport run_differential(const DesignConfig& design,
                            const std::optional<TrojanConfig>& trojan,
                            const StimulusTrace& trace);

/// Checks that the trojan's trigger and payload suit the design; throws
/// Error naming the offending field otherwise.
void validate(const DesignConfig& design,
              const std::optional<TrojanConfig>& trojan);

struct SweepCell {
  DesignConfig design;
  std::optional<TrojanConfig> trojan;
  std::variant<GeneratorSpec, StimulusTrace> stimulus;
};

struct SweepOptions {
  unsigned jobs = 1;  // 0 picks std::thread::hardware_concurrency()
};

/// One report per cell, in cell order regardless of `jobs`. A failing cell
/// aborts the sweep with an Error that names its index.
std::vector<DiffReport> sweep(const std::vector<SweepCell>& grid,
                              SweepOptions options = {});

}  // namespace trojanforge

#endif  // TROJANFORGE_HARNESS_H_
