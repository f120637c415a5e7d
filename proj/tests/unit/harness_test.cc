#include "trojanforge/harness.h"

#include <gtest/gtest.h>

#include "trojanforge/edge.h"
#include "trojanforge/error.h"

namespace trojanforge {
namespace {

std::vector<SweepCell> mixed_grid(std::uint64_t seed) {
  std::vector<SweepCell> grid;
  for (ReductionOp op : kAllReductionOps) {
    grid.push_back({{DesignId::kEdge8},
                    parse_trojan_descriptor("reduce:" + std::string(to_string(op))),
                    GeneratorSpec{UniformRandom{DesignId::kEdge8}, seed, 227}});
  }
  for (int bit : {5, 10, 18, 28}) {
    grid.push_back({{DesignId::kLfsr32},
                    parse_trojan_descriptor("resetbit:" + std::to_string(bit)),
                    GeneratorSpec{LfsrResetSchedule{}, seed, 20000}});
  }
  grid.push_back({{DesignId::kMousePs2}, parse_trojan_descriptor("ground:xor"),
                  GeneratorSpec{MouseStream{0.05}, seed, 1419}});
  grid.push_back({{DesignId::kUartRx}, parse_trojan_descriptor("dup:4:r=3"),
                  GeneratorSpec{UartFrames{0.1, 0.1, 1}, seed, 1315}});
  return grid;
}

TEST(RunDifferential, GoldenAgainstGoldenIsClean) {
  for (const auto& cell : mixed_grid(3)) {
    const auto trace = generate(std::get<GeneratorSpec>(cell.stimulus));
    const auto r = run_differential(cell.design, std::nullopt, trace);
    EXPECT_EQ(r.value_mismatches, 0U);
    EXPECT_EQ(r.validation_errors, 0U);
    EXPECT_FALSE(r.first_trigger_cycle);
    EXPECT_EQ(r.trojan, "none");
    EXPECT_EQ(r.error_rate, 0.0);
  }
}

TEST(RunDifferential, DesignTraceMismatch) {
  const auto trace = generate(GeneratorSpec{MouseStream{}, 1, 30});
  EXPECT_THROW(run_differential({DesignId::kEdge8}, std::nullopt, trace), Error);
}

TEST(RunDifferential, WrongTrojanForDesign) {
  const auto trace = generate(GeneratorSpec{UniformRandom{}, 1, 30});
  EXPECT_THROW(run_differential({DesignId::kEdge8},
                                parse_trojan_descriptor("dup:3"), trace),
               Error);
}

// Replays the trojaned detector alone with its own bookkeeping and counts the
// cycles where the payload fired; every such cycle is exactly one mismatch.
TEST(RunDifferential, EdgeMatchesSingleModelReplay) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto trace = generate(GeneratorSpec{UniformRandom{}, seed, 227});
    for (ReductionOp op : kAllReductionOps) {
      for (ExtendMode mode : {ExtendMode::kReplicate, ExtendMode::kZeroExtend}) {
        std::uint8_t q = 0, out = 0;
        std::uint64_t expected = 0;
        for (const auto& e : trace.entries) {
          const bool fire = reduce(op, BitVec(8, out));
          const std::uint8_t corrupt =
              fire ? (mode == ExtendMode::kReplicate ? 0xFF : 0x01) : 0;
          out = static_cast<std::uint8_t>(q ^ e.value ^ corrupt);
          q = e.value;
          expected += fire;
        }
        TrojanConfig cfg{TriggerSpec{ReductionTrigger{op}, 1},
                         ComplementOutput{mode}};
        const auto r = run_differential({DesignId::kEdge8}, cfg, trace);
        EXPECT_EQ(r.value_mismatches, expected);
        EXPECT_DOUBLE_EQ(r.error_rate, expected / 227.0);
      }
    }
  }
}

TEST(RunDifferential, LfsrMismatchesFromTriggerOnward) {
  const auto trace = generate(GeneratorSpec{LfsrResetSchedule{300, 1}, 8, 50000});
  const auto r = run_differential({DesignId::kLfsr32},
                                  parse_trojan_descriptor("resetbit:10"), trace);
  ASSERT_TRUE(r.first_trigger_cycle);
  EXPECT_EQ(r.value_mismatches, 50000 - *r.first_trigger_cycle);
}

TEST(RunDifferential, UartEventsAndRate) {
  const auto trace = generate(GeneratorSpec{UartFrames{}, 2, 1315});
  const auto r = run_differential({DesignId::kUartRx},
                                  parse_trojan_descriptor("dup:5"), trace);
  EXPECT_EQ(r.events, 1315U / 12);
  EXPECT_EQ(r.validation_errors, r.value_mismatches);  // one flip per frame
  EXPECT_DOUBLE_EQ(r.error_rate,
                   static_cast<double>(r.errors()) / static_cast<double>(r.events));
}

TEST(Sweep, OrderAndParallelismInvariant) {
  const auto grid = mixed_grid(9);
  const auto serial = sweep(grid, {1});
  ASSERT_EQ(serial.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(serial[i].design, grid[i].design.design);
    EXPECT_EQ(serial[i].trojan, format_trojan_descriptor(grid[i].trojan));
  }
  EXPECT_EQ(sweep(grid, {4}), serial);
  EXPECT_EQ(sweep(grid, {0}), serial);
  EXPECT_EQ(sweep(grid, {1}), serial);
}

TEST(Sweep, EmptyGrid) { EXPECT_THROW(sweep({}), Error); }

TEST(Sweep, FailingCellNamesIndex) {
  auto grid = mixed_grid(1);
  grid[3].stimulus = GeneratorSpec{MouseStream{}, 1, 10};  // wrong design
  try {
    sweep(grid, {3});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("cell 3"), std::string::npos);
  }
}

}  // namespace
}  // namespace trojanforge
