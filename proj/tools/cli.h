#ifndef TROJANFORGE_TOOLS_CLI_H_
#define TROJANFORGE_TOOLS_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trojanforge/harness.h"

namespace trojanforge::cli {

enum class ReportFormat { kCsv, kJson };

inline constexpr std::string_view kCsvHeader =
    "design,trojan,cycles,value_mismatches,validation_errors,first_trigger,rate";

std::string format_reports(const std::vector<DiffReport>& reports,
                           ReportFormat format);
std::string format_csv(const std::vector<DiffReport>& reports);
std::string format_json(const std::vector<DiffReport>& reports);

/// Error rate as printed in both report encodings.
std::string format_rate(double rate);

/// Everything one `run` invocation (or one grid-file line) describes.
struct RunConfig {
  std::string design;
  std::string trojan = "none";
  std::optional<std::string> trace_path;
  std::optional<std::uint64_t> cycles;
  std::uint64_t seed = 1;
  std::optional<std::string> generator;
  std::uint64_t reset_period = 100;
  std::uint64_t reset_hold = 1;
  double noise = 0.0;
  double fault_parity = 0.0;
  double fault_stop = 0.0;
  unsigned gap_bits = 1;
  unsigned width = 32;
  std::vector<unsigned> taps = {1, 2, 22, 32};
  std::uint64_t lfsr_seed = 1;
};

/// Resolves names, builds the generator spec or loads the trace. Relative
/// trace paths resolve against `base_dir`.
SweepCell to_cell(const RunConfig& cfg,
                  const std::filesystem::path& base_dir = {});

/// Parses one grid-file line (the `run` flag syntax, without output flags).
RunConfig parse_grid_line(const std::string& line, std::uint64_t default_seed);

/// Grid-file lines for a built-in preset: table1, table2, table4, table5.
/// `cycles` overrides the preset's sample count.
std::vector<std::string> table_preset(std::string_view name, std::uint64_t seed,
                                      std::optional<std::uint64_t> cycles = {});

/// Reads a grid file: one RunConfig per line; blank lines and `#` comments
/// are skipped.
std::vector<SweepCell> load_grid(std::istream& in, std::uint64_t default_seed,
                                 const std::filesystem::path& base_dir = {});

/// Default seed: TROJANFORGE_SEED when set, else 1.
std::uint64_t default_seed();

/// Entry point shared by the executable and the tests. Returns the process
/// exit code; diagnostics go to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace trojanforge::cli

#endif  // TROJANFORGE_TOOLS_CLI_H_
