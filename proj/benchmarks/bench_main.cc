#include <benchmark/benchmark.h>

#include "trojanforge/edge.h"
#include "trojanforge/harness.h"
#include "trojanforge/lfsr.h"
#include "trojanforge/stimulus.h"
#include "trojanforge/uart.h"

namespace tf = trojanforge;

namespace {

void BM_Reduce(benchmark::State& state) {
  std::uint64_t x = 0;
  for (auto _ : state) {
    for (auto op : tf::kAllReductionOps) {
      benchmark::DoNotOptimize(tf::reduce(op, tf::BitVec(32, x)));
    }
    ++x;
  }
}
BENCHMARK(BM_Reduce);

void BM_LfsrStep(benchmark::State& state) {
  auto s = tf::make_lfsr(tf::LfsrPolynomial());
  for (auto _ : state) {
    s = tf::lfsr_step(s);
    benchmark::DoNotOptimize(s.bits);
  }
}
BENCHMARK(BM_LfsrStep);

void BM_UartStep(benchmark::State& state) {
  const auto bits = tf::uart_frame_bits(0xA5);
  tf::UartRx rx;
  std::size_t i = 0;
  for (auto _ : state) {
    rx = tf::uart_step(rx, bits[i]).rx;
    i = (i + 1) % bits.size();
    benchmark::DoNotOptimize(rx);
  }
}
BENCHMARK(BM_UartStep);

void run_diff(benchmark::State& state, tf::GeneratorKind kind,
              const char* descriptor) {
  const auto cycles = static_cast<std::uint64_t>(state.range(0));
  const auto trace = tf::generate(tf::GeneratorSpec{kind, 1, cycles});
  const tf::DesignConfig design{trace.design};
  const auto trojan = tf::parse_trojan_descriptor(descriptor);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tf::run_differential(design, trojan, trace));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DiffEdge(benchmark::State& s) {
  run_diff(s, tf::UniformRandom{tf::DesignId::kEdge8}, "reduce:xor");
}
void BM_DiffLfsr(benchmark::State& s) {
  run_diff(s, tf::LfsrResetSchedule{}, "resetbit:10");
}
void BM_DiffMouse(benchmark::State& s) {
  run_diff(s, tf::MouseStream{}, "ground:xor");
}
void BM_DiffUart(benchmark::State& s) {
  run_diff(s, tf::UartFrames{}, "dup:5");
}
BENCHMARK(BM_DiffEdge)->Arg(1 << 16);
BENCHMARK(BM_DiffLfsr)->Arg(400411);
BENCHMARK(BM_DiffMouse)->Arg(1 << 16);
BENCHMARK(BM_DiffUart)->Arg(1 << 16);

}  // namespace
BENCHMARK_MAIN();
