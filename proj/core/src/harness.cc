#include "trojanforge/harness.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "trojanforge/edge.h"
#include "trojanforge/error.h"
#include "trojanforge/mouse.h"
#include "trojanforge/uart.h"

namespace trojanforge {

namespace {

void note_trigger(DiffReport& report, bool fired, std::uint64_t cycle) {
  if (fired && !report.first_trigger_cycle) report.first_trigger_cycle = cycle;
}

void run_edge(const std::optional<TrojanConfig>& cfg,
              const StimulusTrace& trace, DiffReport& report) {
  const std::optional<EdgeTrojan> trojan =
      cfg ? std::optional(make_edge_trojan(*cfg)) : std::nullopt;
  EdgeState golden;
  EdgeState dut;
  TriggerState ts;
  for (std::uint64_t i = 0; i < trace.entries.size(); ++i) {
    const BitVec in(8, trace.entries[i].value);
    golden = edge_step(golden, in);
    if (trojan) {
      const EdgeStepResult r = edge_step(dut, in, *trojan, ts);
      dut = r.state;
      ts = r.trigger_state;
      note_trigger(report, r.fired, i);
    } else {
      dut = edge_step(dut, in);
    }
    if (golden.out != dut.out) ++report.value_mismatches;
  }
}

void run_lfsr(const DesignConfig& design,
              const std::optional<TrojanConfig>& cfg,
              const StimulusTrace& trace, DiffReport& report) {
  const std::optional<LfsrTrojan> trojan =
      cfg ? std::optional(make_lfsr_trojan(*cfg, design.lfsr_poly.width()))
          : std::nullopt;
  LfsrState golden = make_lfsr(design.lfsr_poly, design.lfsr_seed);
  LfsrState dut = golden;
  const std::uint64_t mask = design.lfsr_poly.toggle_mask();
  TriggerState ts;
  for (std::uint64_t i = 0; i < trace.entries.size(); ++i) {
    if (trace.entries[i].reset) {
      golden = lfsr_reset(golden);
      if (trojan) {
        const LfsrResetResult r = lfsr_reset(dut, *trojan, ts);
        dut = r.state;
        ts = r.trigger_state;
        note_trigger(report, r.fired, i);
      } else {
        dut = lfsr_reset(dut);
      }
    } else {
      // Hot path: skip the BitVec round trip of lfsr_step.
      golden.bits = BitVec(golden.bits.width(), lfsr_next(golden.bits.bits(), mask));
      dut.bits = BitVec(dut.bits.width(), lfsr_next(dut.bits.bits(), mask));
    }
    if (golden.bits != dut.bits) ++report.value_mismatches;
  }
}

void run_mouse(const std::optional<TrojanConfig>& cfg,
               const StimulusTrace& trace, DiffReport& report) {
  const std::optional<MouseTrojan> trojan =
      cfg ? std::optional(make_mouse_trojan(*cfg)) : std::nullopt;
  MouseRx golden;
  MouseRx dut;
  TriggerState ts;
  for (std::uint64_t i = 0; i < trace.entries.size(); ++i) {
    const StimulusEntry& e = trace.entries[i];
    if (e.reset) {
      golden = mouse_reset(golden);
      dut = mouse_reset(dut);
      continue;
    }
    const BitVec in(8, e.value);
    const MouseStepResult g = mouse_step(golden, in);
    MouseStepResult d;
    if (trojan) {
      d = mouse_step(dut, in, *trojan, ts);
      ts = d.trigger_state;
      note_trigger(report, d.fired, i);
    } else {
      d = mouse_step(dut, in);
    }
    golden = g.rx;
    dut = d.rx;
    if (g.done) {
      ++report.events;
      if (!d.done) {
        ++report.validation_errors;
      } else if (*g.packet != *d.packet) {
        ++report.value_mismatches;
      }
    }
  }
}

void run_uart(const std::optional<TrojanConfig>& cfg,
              const StimulusTrace& trace, DiffReport& report) {
  const std::optional<UartTrojan> trojan =
      cfg ? std::optional(make_uart_trojan(*cfg)) : std::nullopt;
  UartRx golden;
  UartRx dut;
  TriggerState ts;
  for (std::uint64_t i = 0; i < trace.entries.size(); ++i) {
    const bool line = trace.entries[i].value & 1U;
    const UartStepResult g = uart_step(golden, line);
    UartStepResult d;
    if (trojan) {
      d = uart_step(dut, line, *trojan, ts);
      ts = d.trigger_state;
      note_trigger(report, d.fired, i);
    } else {
      d = uart_step(dut, line);
    }
    golden = g.rx;
    dut = d.rx;
    if (g.done) {
      ++report.events;
      if (!d.done) {
        // Frame alignment is preserved by construction; count it if not.
        ++report.validation_errors;
        continue;
      }
      if (*g.byte != *d.byte) ++report.value_mismatches;
      if (g.valid != d.valid) ++report.validation_errors;
    }
  }
}

}  // namespace

void validate(const DesignConfig& design,
              const std::optional<TrojanConfig>& trojan) {
  if (design.design == DesignId::kLfsr32) {
    make_lfsr(design.lfsr_poly, design.lfsr_seed);
  }
  if (!trojan) return;
  switch (design.design) {
    case DesignId::kEdge8:
      make_edge_trojan(*trojan);
      break;
    case DesignId::kLfsr32:
      make_lfsr_trojan(*trojan, design.lfsr_poly.width());
      break;
    case DesignId::kMousePs2:
      make_mouse_trojan(*trojan);
      break;
    case DesignId::kUartRx:
      make_uart_trojan(*trojan);
      break;
  }
}

DiffReport run_differential(const DesignConfig& design,
                            const std::optional<TrojanConfig>& trojan,
                            const StimulusTrace& trace) {
  if (trace.design != design.design) {
    throw Error("design/trace mismatch: config is " +
                std::string(to_string(design.design)) + ", trace is " +
                std::string(to_string(trace.design)));
  }
  validate(design, trojan);
  validate(trace);

  DiffReport report;
  report.design = design.design;
  report.trojan = format_trojan_descriptor(trojan);
  report.cycles = trace.entries.size();

  std::uint64_t denominator = report.cycles;
  switch (design.design) {
    case DesignId::kEdge8:
      run_edge(trojan, trace, report);
      break;
    case DesignId::kLfsr32:
      run_lfsr(design, trojan, trace, report);
      break;
    case DesignId::kMousePs2:
      run_mouse(trojan, trace, report);
      denominator = report.events;
      break;
    case DesignId::kUartRx:
      run_uart(trojan, trace, report);
      denominator = report.events;
      break;
  }
  report.error_rate =
      denominator == 0 ? 0.0
                       : static_cast<double>(report.errors()) /
                             static_cast<double>(denominator);
  return report;
}

std::vector<DiffReport> sweep(const std::vector<SweepCell>& grid,
                              SweepOptions options) {
  if (grid.empty()) throw Error("sweep: empty grid");

  std::vector<DiffReport> reports(grid.size());
  std::vector<std::exception_ptr> failures(grid.size());

  auto run_cell = [&](std::size_t i) {
    try {
      const SweepCell& cell = grid[i];
      if (const auto* spec = std::get_if<GeneratorSpec>(&cell.stimulus)) {
        reports[i] = run_differential(cell.design, cell.trojan, generate(*spec));
      } else {
        reports[i] = run_differential(cell.design, cell.trojan,
                                      std::get<StimulusTrace>(cell.stimulus));
      }
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  unsigned jobs = options.jobs == 0 ? std::thread::hardware_concurrency()
                                    : options.jobs;
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(grid.size()));

  if (jobs == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) run_cell(i);
      });
    }
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      throw Error("sweep cell " + std::to_string(i) + ": " + e.what());
    }
  }
  return reports;
}

}  // namespace trojanforge
