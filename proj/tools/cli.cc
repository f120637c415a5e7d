#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "trojanforge/error.h"

namespace trojanforge::cli {

namespace {

constexpr std::string_view kOpNames[] = {"and",  "or",  "xor",
                                         "nand", "nor", "xnor"};

// CLI11 binds plain values; presence is read back from the Option handles.
struct RunBinding {
  RunConfig cfg;
  std::uint64_t cycles = 0;
  std::string trace;
  std::string generator;
  CLI::Option* cycles_opt = nullptr;
  CLI::Option* trace_opt = nullptr;
  CLI::Option* generator_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  RunConfig finish(std::uint64_t fallback_seed) const {
    RunConfig out = cfg;
    if (cycles_opt->count() > 0) out.cycles = cycles;
    if (trace_opt && trace_opt->count() > 0) out.trace_path = trace;
    if (generator_opt->count() > 0) out.generator = generator;
    if (seed_opt->count() == 0) out.seed = fallback_seed;
    return out;
  }
};

void add_generator_options(CLI::App& app, RunBinding& b) {
  app.add_option("--design", b.cfg.design,
                 "Design id: edge8, lfsr32, mouse_ps2, uart_rx")
      ->required();
  b.cycles_opt = app.add_option("--cycles", b.cycles, "Generated trace length");
  b.seed_opt = app.add_option("--seed", b.cfg.seed,
                              "Generator seed (default: $TROJANFORGE_SEED or 1)");
  b.generator_opt = app.add_option(
      "--generator", b.generator,
      "uniform, lfsr-resets, mouse-stream or uart-frames (default per design)");
  app.add_option("--reset-period", b.cfg.reset_period,
                 "lfsr-resets: mean cycles between reset pulses");
  app.add_option("--reset-hold", b.cfg.reset_hold,
                 "lfsr-resets: cycles per reset pulse");
  app.add_option("--noise", b.cfg.noise,
                 "mouse-stream: probability of a noise byte per packet");
  app.add_option("--fault-parity", b.cfg.fault_parity,
                 "uart-frames: probability of a flipped parity bit");
  app.add_option("--fault-stop", b.cfg.fault_stop,
                 "uart-frames: probability of a missing stop bit");
  app.add_option("--gap-bits", b.cfg.gap_bits,
                 "uart-frames: idle-high bits between frames");
}

void add_run_options(CLI::App& app, RunBinding& b) {
  add_generator_options(app, b);
  app.add_option("--trojan", b.cfg.trojan, "Trojan descriptor (default none)");
  b.trace_opt = app.add_option("--trace", b.trace, "Replay a trace file");
  b.trace_opt->excludes(b.cycles_opt);
  b.trace_opt->excludes(b.generator_opt);
  app.add_option("--width", b.cfg.width, "lfsr32: register width");
  app.add_option("--taps", b.cfg.taps, "lfsr32: 1-based tap positions")
      ->delimiter(',');
  app.add_option("--lfsr-seed", b.cfg.lfsr_seed, "lfsr32: reset value");
}

DesignId require_design(const std::string& name) {
  if (auto id = parse_design_id(name)) return *id;
  throw Error("field 'design': unknown design id '" + name +
              "' (expected edge8, lfsr32, mouse_ps2 or uart_rx)");
}

GeneratorSpec make_generator(const RunConfig& cfg, DesignId design) {
  if (!cfg.cycles) {
    throw Error("field 'cycles': give --cycles to generate or --trace to replay");
  }
  GeneratorSpec spec;
  spec.seed = cfg.seed;
  spec.cycles = *cfg.cycles;

  std::string name = cfg.generator.value_or("");
  if (name.empty()) {
    switch (design) {
      case DesignId::kEdge8:
        name = "uniform";
        break;
      case DesignId::kLfsr32:
        name = "lfsr-resets";
        break;
      case DesignId::kMousePs2:
        name = "mouse-stream";
        break;
      case DesignId::kUartRx:
        name = "uart-frames";
        break;
    }
  }

  if (name == "uniform") {
    spec.kind = UniformRandom{design};
  } else if (name == "lfsr-resets") {
    spec.kind = LfsrResetSchedule{cfg.reset_period, cfg.reset_hold};
  } else if (name == "mouse-stream") {
    spec.kind = MouseStream{cfg.noise};
  } else if (name == "uart-frames") {
    spec.kind = UartFrames{cfg.fault_parity, cfg.fault_stop, cfg.gap_bits};
  } else {
    throw Error("field 'generator': unknown generator '" + name + "'");
  }
  if (design_of(spec) != design) {
    throw Error("field 'generator': '" + name + "' does not drive " +
                std::string(to_string(design)));
  }
  validate(spec);
  return spec;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& text, const std::string& path,
                  std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error("field 'output': cannot open '" + path + "'");
  file << text;
  if (!file) throw Error("field 'output': write to '" + path + "' failed");
}

ReportFormat parse_format(const std::string& name) {
  return name == "json" ? ReportFormat::kJson : ReportFormat::kCsv;
}

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("TROJANFORGE_SEED");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 0);
  if (*end != '\0' || env[0] == '-') {
    throw Error("field 'TROJANFORGE_SEED': not an unsigned integer: '" +
                std::string(env) + "'");
  }
  return v;
}

SweepCell to_cell(const RunConfig& cfg, const std::filesystem::path& base_dir) {
  SweepCell cell;
  cell.design.design = require_design(cfg.design);
  if (cell.design.design == DesignId::kLfsr32) {
    cell.design.lfsr_poly = LfsrPolynomial(cfg.width, cfg.taps);
    cell.design.lfsr_seed = cfg.lfsr_seed;
  }
  cell.trojan = parse_trojan_descriptor(cfg.trojan);
  validate(cell.design, cell.trojan);

  if (cfg.trace_path) {
    std::filesystem::path p(*cfg.trace_path);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    StimulusTrace trace;
    try {
      trace = load_trace(p);
    } catch (const Error& e) {
      throw Error(std::string("field 'trace': ") + e.what());
    }
    if (trace.design != cell.design.design) {
      throw Error("field 'trace': trace is for " +
                  std::string(to_string(trace.design)) + ", not " + cfg.design);
    }
    cell.stimulus = std::move(trace);
  } else {
    cell.stimulus = make_generator(cfg, cell.design.design);
  }
  return cell;
}

RunConfig parse_grid_line(const std::string& line, std::uint64_t default_seed) {
  CLI::App app{"grid line"};
  RunBinding b;
  add_run_options(app, b);
  try {
    app.parse(line, false);
  } catch (const CLI::ParseError& e) {
    throw Error(std::string(e.what()));
  }
  return b.finish(default_seed);
}

std::vector<SweepCell> load_grid(std::istream& in, std::uint64_t default_seed,
                                 const std::filesystem::path& base_dir) {
  std::vector<SweepCell> grid;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      grid.push_back(to_cell(parse_grid_line(line, default_seed), base_dir));
    } catch (const std::exception& e) {
      throw Error("grid line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return grid;
}

std::vector<std::string> table_preset(std::string_view name, std::uint64_t seed,
                                      std::optional<std::uint64_t> cycles) {
  const std::string s = " --seed " + std::to_string(seed);
  auto n = [&](std::uint64_t fallback) {
    return " --cycles " + std::to_string(cycles.value_or(fallback));
  };

  std::vector<std::string> lines;
  if (name == "table1") {
    for (auto op : kOpNames) {
      lines.push_back("--design edge8 --trojan reduce:" + std::string(op) +
                      n(227) + s);
    }
  } else if (name == "table2") {
    for (int bit : {5, 10, 18, 28}) {
      lines.push_back("--design lfsr32 --trojan resetbit:" +
                      std::to_string(bit) + n(400411) + s);
    }
  } else if (name == "table4") {
    for (auto op : kOpNames) {
      for (const char* kind : {"swap", "ground"}) {
        lines.push_back("--design mouse_ps2 --trojan " + std::string(kind) +
                        ":" + std::string(op) + n(1419) + s);
      }
    }
  } else if (name == "table5") {
    for (int bit = 1; bit <= 6; ++bit) {
      lines.push_back("--design uart_rx --trojan dup:" + std::to_string(bit) +
                      n(1315) + s);
    }
  } else {
    throw Error("field 'table': unknown preset '" + std::string(name) +
                "' (expected table1, table2, table4 or table5)");
  }
  return lines;
}

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{
      "Lockstep golden-vs-trojan simulation of four small digital designs"};
  app.name("trojanforge");
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Write a stimulus trace");
  RunBinding gen_b;
  std::string gen_output;
  add_generator_options(*gen, gen_b);
  gen_b.cycles_opt->required();
  gen->add_option("-o,--output", gen_output, "Trace file (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "One differential run");
  RunBinding run_b;
  std::string run_format = "csv";
  std::string run_output;
  add_run_options(*run, run_b);
  run->add_option("--format", run_format)->check(CLI::IsMember({"csv", "json"}));
  run->add_option("-o,--output", run_output, "Report file (default stdout)");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Run every line of a grid file");
  std::string grid_path;
  std::string sweep_format = "csv";
  std::string sweep_output;
  unsigned sweep_jobs = 1;
  sw->add_option("grid", grid_path, "Grid file, one run per line")->required();
  sw->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}));
  sw->add_option("-o,--output", sweep_output, "Report file (default stdout)");
  sw->add_option("-j,--jobs", sweep_jobs, "Worker threads (0 = all cores)");

  // tables
  auto* tab = app.add_subcommand("tables", "Built-in experiment presets");
  std::string table_name;
  std::uint64_t table_seed = 1;
  std::uint64_t table_cycles = 0;
  std::string table_format = "csv";
  std::string table_output;
  unsigned table_jobs = 1;
  bool emit_grid = false;
  tab->add_option("table", table_name, "table1, table2, table4 or table5")
      ->required();
  auto* table_seed_opt = tab->add_option("--seed", table_seed, "Generator seed");
  auto* table_cycles_opt =
      tab->add_option("--cycles", table_cycles, "Override the sample count");
  tab->add_option("--format", table_format)->check(CLI::IsMember({"csv", "json"}));
  tab->add_option("-o,--output", table_output, "Report file (default stdout)");
  tab->add_option("-j,--jobs", table_jobs, "Worker threads (0 = all cores)");
  tab->add_flag("--emit-grid", emit_grid,
                "Print the equivalent grid file instead of running it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) {
      const RunConfig cfg = gen_b.finish(default_seed());
      const GeneratorSpec spec = make_generator(cfg, require_design(cfg.design));
      write_output(format_trace(generate(spec)), gen_output, out);
    } else if (*run) {
      const SweepCell cell = to_cell(run_b.finish(default_seed()));
      const auto reports = sweep({cell});
      write_output(format_reports(reports, parse_format(run_format)),
                   run_output, out);
    } else if (*sw) {
      const std::filesystem::path path(grid_path);
      std::istringstream text(read_file(path));
      const auto grid = load_grid(text, default_seed(), path.parent_path());
      const auto reports = sweep(grid, SweepOptions{sweep_jobs});
      write_output(format_reports(reports, parse_format(sweep_format)),
                   sweep_output, out);
    } else if (*tab) {
      const std::uint64_t seed =
          table_seed_opt->count() > 0 ? table_seed : default_seed();
      const std::optional<std::uint64_t> cycles =
          table_cycles_opt->count() > 0 ? std::optional(table_cycles)
                                        : std::nullopt;
      const auto lines = table_preset(table_name, seed, cycles);
      std::string grid_text;
      for (const auto& l : lines) grid_text += l + "\n";
      if (emit_grid) {
        write_output(grid_text, table_output, out);
      } else {
        std::istringstream text(grid_text);
        const auto reports =
            sweep(load_grid(text, seed), SweepOptions{table_jobs});
        write_output(format_reports(reports, parse_format(table_format)),
                     table_output, out);
      }
    }
  } catch (const std::exception& e) {
    err << "trojanforge: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace trojanforge::cli
