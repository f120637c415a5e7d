// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "trojanforge/bitvec.h"
#include "trojanforge/edge.h"
#include "trojanforge/harness.h"
#include "trojanforge/lfsr.h"
#include "trojanforge/mouse.h"
#include "trojanforge/stimulus.h"
#include "trojanforge/uart.h"

namespace tf = trojanforge;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  const char* id;
  const char* title;
  double time_limit_s;  // 0 = no limit
  std::function<Outcome()> body;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// AC1 ------------------------------------------------------------------------

Outcome reduction_laws() {
  Outcome o;
  for (std::uint64_t x = 0; x < 256; ++x) {
    const tf::BitVec v(8, x);
    bool all = true, any = false, parity = false;
    for (unsigned i = 0; i < 8; ++i) {
      const bool b = (x >> i) & 1U;
      all = all && b;
      any = any || b;
      parity = parity != b;
    }
    const bool want[6] = {all, any, parity, !all, !any, !parity};
    for (std::size_t k = 0; k < 6; ++k) {
      o.require(tf::reduce(tf::kAllReductionOps[k], v) == want[k],
                "oracle disagreement at " + std::to_string(x));
    }
    o.require(tf::reduce(tf::ReductionOp::kNand, v) !=
                      tf::reduce(tf::ReductionOp::kAnd, v) &&
                  tf::reduce(tf::ReductionOp::kNor, v) !=
                      tf::reduce(tf::ReductionOp::kOr, v) &&
                  tf::reduce(tf::ReductionOp::kXnor, v) !=
                      tf::reduce(tf::ReductionOp::kXor, v),
              "complement law fails at " + std::to_string(x));
  }
  o.detail = o.ok ? "256 values x 6 ops" : o.detail;
  return o;
}

// AC2 ------------------------------------------------------------------------

Outcome table1_structure() {
  Outcome o;
  std::map<tf::ReductionOp, std::vector<double>> rates;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto trace =
        tf::generate(tf::GeneratorSpec{tf::UniformRandom{tf::DesignId::kEdge8}, seed, 227});
    for (tf::ReductionOp op : tf::kAllReductionOps) {
      const tf::TrojanConfig cfg{tf::TriggerSpec{tf::ReductionTrigger{op}, 1},
                                 tf::ComplementOutput{tf::ExtendMode::kReplicate}};
      const auto r = tf::run_differential({tf::DesignId::kEdge8}, cfg, trace);
      rates[op].push_back(static_cast<double>(r.value_mismatches) / 227.0);
    }
  }
  std::map<tf::ReductionOp, double> m;
  std::string detail = "medians";
  for (auto op : tf::kAllReductionOps) {
    m[op] = median(rates[op]);
    detail += " " + std::string(tf::to_string(op)) + "=" + fmt("%.3f", m[op]);
  }
  using Op = tf::ReductionOp;
  o.require(m[Op::kAnd] <= 0.10 && m[Op::kNor] <= 0.10, "AND/NOR above 10%");
  o.require(m[Op::kXor] >= 0.35 && m[Op::kXor] <= 0.65, "XOR outside 35-65%");
  o.require(m[Op::kXnor] >= 0.35 && m[Op::kXnor] <= 0.65, "XNOR outside 35-65%");
  o.require(m[Op::kOr] >= 0.85 && m[Op::kNand] >= 0.85, "OR/NAND below 85%");
  o.require(std::abs(m[Op::kXor] - 0.45) <= 0.15, "XOR not within 45% +/- 15pp");
  if (o.ok) o.detail = detail;
  else o.detail += " (" + detail + ")";
  return o;
}

// AC3 ------------------------------------------------------------------------

Outcome lfsr_structural_law() {
  Outcome o;
  tf::SplitMix64 pick(2024);
  int fired = 0;
  for (int i = 0; i < 10; ++i) {
    const tf::LfsrResetSchedule sched{5 + pick.below(5000), 1 + pick.below(4)};
    const unsigned bit = 1 + static_cast<unsigned>(pick.below(32));
    const auto trace = tf::generate(tf::GeneratorSpec{sched, pick.next(), 100000});
    const auto r = tf::run_differential(
        {tf::DesignId::kLfsr32},
        tf::parse_trojan_descriptor("resetbit:" + std::to_string(bit)), trace);
    const std::uint64_t expected =
        r.first_trigger_cycle ? r.cycles - *r.first_trigger_cycle : 0;
    fired += r.first_trigger_cycle.has_value();
    o.require(r.value_mismatches == expected,
              "schedule " + std::to_string(i) + ": " +
                  std::to_string(r.value_mismatches) + " mismatches, expected " +
                  std::to_string(expected));
  }
  o.require(fired > 0, "no schedule ever triggered");
  if (o.ok) {
    o.detail = "10 schedules, " + std::to_string(fired) +
               " triggered, mismatches == cycles - trigger cycle";
  }
  return o;
}

// AC4 ------------------------------------------------------------------------

Outcome lfsr_period_oracle() {
  Outcome o;
  const std::uint64_t p1 = tf::enumerate_period(4, {4, 3}, 1);
  const std::uint64_t p2 = tf::enumerate_period(4, {4, 1}, 1);
  const std::uint64_t p3 = tf::enumerate_period(16, {16, 14, 13, 11}, 1);
  o.require(p1 == 15, "w=4 {4,3} period " + std::to_string(p1));
  o.require(p2 == 15, "w=4 {4,1} period " + std::to_string(p2));
  o.require(p3 == 65535, "w=16 period " + std::to_string(p3));

  tf::LfsrState zero = tf::make_lfsr(tf::LfsrPolynomial());
  zero.bits = tf::BitVec::zeros(32);
  for (int i = 0; i < 100000; ++i) {
    zero = tf::lfsr_step(zero);
    if (zero.bits.bits() != 0) {
      o.require(false, "all-zero state left at step " + std::to_string(i));
      break;
    }
  }
  if (o.ok) o.detail = "periods 15, 15, 65535; zero fixed at w=32";
  return o;
}

// AC5 ------------------------------------------------------------------------

Outcome mouse_forced_rows() {
  Outcome o;
  const auto trace = tf::generate(tf::GeneratorSpec{tf::MouseStream{0.0}, 5, 30000});
  for (const char* d : {"swap:and", "ground:and", "swap:nor", "ground:nor"}) {
    const auto r = tf::run_differential({tf::DesignId::kMousePs2},
                                        tf::parse_trojan_descriptor(d), trace);
    o.require(r.events == 10000, std::string(d) + ": expected 10^4 packets");
    o.require(r.errors() == 0, std::string(d) + ": " + std::to_string(r.errors()) +
                                   " errors");
  }
  if (o.ok) o.detail = "10^4 packets, AND/NOR x Trojan 1/2 all 0 errors";
  return o;
}

// AC6 ------------------------------------------------------------------------

Outcome mouse_trojan_ordering() {
  Outcome o;
  std::uint64_t t1_total = 0, t2_total = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto trace = tf::generate(tf::GeneratorSpec{tf::MouseStream{0.0}, seed, 1419});
    for (const char* op : {"or", "xor", "nand", "xnor"}) {
      const auto t1 = tf::run_differential(
          {tf::DesignId::kMousePs2},
          tf::parse_trojan_descriptor(std::string("swap:") + op), trace);
      const auto t2 = tf::run_differential(
          {tf::DesignId::kMousePs2},
          tf::parse_trojan_descriptor(std::string("ground:") + op), trace);
      t1_total += t1.errors();
      t2_total += t2.errors();
      o.require(t2.errors() >= t1.errors(),
                std::string(op) + " seed " + std::to_string(seed) + ": T2 " +
                    std::to_string(t2.errors()) + " < T1 " +
                    std::to_string(t1.errors()));
    }
  }
  if (o.ok) {
    o.detail = "20 seeds x 4 ops, totals T1=" + std::to_string(t1_total) +
               " T2=" + std::to_string(t2_total);
  }
  return o;
}

// AC7 ------------------------------------------------------------------------

// Frame-level reference for duplication with the shift-register XOR trigger.
// The register is cleared by the start bit, so on entry to data bit k it holds
// bits 1..k-1 and the trigger is their parity. When it fires, positions
// k..k+r-1 receive bit k-1.
bool oracle_frame_corrupted(const std::vector<bool>& data, unsigned k,
                            unsigned r) {
  bool parity = false;
  for (unsigned j = 1; j < k; ++j) parity = parity != data[j - 1];
  if (!parity) return false;
  const bool copy = data[k - 2];  // parity can be odd only if k >= 2
  for (unsigned j = k; j < k + r; ++j) {
    if (data[j - 1] != copy) return true;
  }
  return false;
}

Outcome uart_round_trip_and_dup() {
  Outcome o;
  for (unsigned p = 0; p < 256; ++p) {
    tf::UartRx rx;
    int frames = 0;
    for (bool b : tf::uart_frame_bits(static_cast<std::uint8_t>(p))) {
      const auto s = tf::uart_step(rx, b);
      rx = s.rx;
      if (s.done) {
        ++frames;
        o.require(s.byte->bits() == p && s.valid,
                  "payload " + std::to_string(p) + " did not round-trip");
      }
    }
    o.require(frames == 1, "payload " + std::to_string(p) + " frame count");
  }

  constexpr unsigned kGap = 1;
  constexpr unsigned kFrameLen = 11 + kGap;
  std::uint64_t total_errors = 0, frames_checked = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto trace =
        tf::generate(tf::GeneratorSpec{tf::UartFrames{0.0, 0.0, kGap}, seed, 1315});
    const std::size_t n_frames = trace.entries.size() / kFrameLen;
    for (unsigned k = 1; k <= 6; ++k) {
      for (unsigned rep : {1U, 2U}) {
        if (k + rep - 1 > 8) continue;
        const tf::UartTrojan trojan{
            tf::TriggerSpec{tf::ReductionTrigger{tf::ReductionOp::kXor}, 1},
            tf::DuplicateDataBit{k, rep}};

        // Model, frame by frame.
        std::vector<bool> model_err;
        tf::UartRx g, d;
        tf::TriggerState ts;
        for (const auto& e : trace.entries) {
          const auto gs = tf::uart_step(g, e.value);
          const auto ds = tf::uart_step(d, e.value, trojan, ts);
          g = gs.rx;
          d = ds.rx;
          ts = ds.trigger_state;
          o.require(gs.done == ds.done, "frame alignment lost");
          if (gs.done) model_err.push_back(*gs.byte != *ds.byte);
        }

        // Oracle, straight from the line bits.
        std::vector<bool> oracle_err;
        for (std::size_t f = 0; f < n_frames; ++f) {
          std::vector<bool> data(8);
          for (unsigned j = 0; j < 8; ++j) {
            data[j] = trace.entries[f * kFrameLen + 1 + j].value;
          }
          oracle_err.push_back(oracle_frame_corrupted(data, k, rep));
        }
        o.require(model_err == oracle_err,
                  "dup:" + std::to_string(k) + " r=" + std::to_string(rep) +
                      " seed " + std::to_string(seed) + " disagrees with oracle");

        const auto report = tf::run_differential(
            {tf::DesignId::kUartRx},
            tf::TrojanConfig{trojan.trigger, trojan.payload}, trace);
        const auto expected = static_cast<std::uint64_t>(
            std::count(oracle_err.begin(), oracle_err.end(), true));
        o.require(report.value_mismatches == expected,
                  "harness total differs from oracle");
        total_errors += expected;
        frames_checked += oracle_err.size();
      }
    }
  }
  if (o.ok) {
    o.detail = "256/256 round-trip; " + std::to_string(frames_checked) +
               " frames vs oracle, " + std::to_string(total_errors) +
               " corrupted";
  }
  return o;
}

// AC8 ------------------------------------------------------------------------

std::string run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "trojanforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = tf::cli::cli_main(static_cast<int>(argv.size()), argv.data(),
                                     out, err);
  return code == 0 ? out.str() : "exit " + std::to_string(code) + ": " + err.str();
}

Outcome determinism() {
  Outcome o;
  for (const char* t : {"table1", "table2", "table4", "table5"}) {
    const auto a = run_cli({"tables", t, "--seed", "7"});
    const auto b = run_cli({"tables", t, "--seed", "7"});
    const auto par = run_cli({"tables", t, "--seed", "7", "--jobs", "4"});
    o.require(a.rfind("design,", 0) == 0, std::string(t) + ": " + a);
    o.require(a == b, std::string(t) + ": repeated run differs");
    o.require(a == par, std::string(t) + ": parallel run differs");
  }
  if (o.ok) o.detail = "4 presets, repeat and --jobs 4 byte-identical";
  return o;
}

// AC9 ------------------------------------------------------------------------

Outcome counter_gated_trigger() {
  Outcome o;
  constexpr std::uint64_t kN = 5;
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto trace =
        tf::generate(tf::GeneratorSpec{tf::UniformRandom{tf::DesignId::kEdge8}, seed, 500});
    for (tf::ReductionOp op : {tf::ReductionOp::kOr, tf::ReductionOp::kXor,
                               tf::ReductionOp::kNand, tf::ReductionOp::kXnor}) {
      // Model: corruption cycles of a gated trojan.
      const tf::EdgeTrojan trojan{tf::TriggerSpec{tf::ReductionTrigger{op}, kN},
                                  tf::ComplementOutput{}};
      tf::EdgeState g, d;
      tf::TriggerState ts;
      std::vector<std::uint64_t> corrupt;
      for (std::uint64_t c = 0; c < trace.entries.size(); ++c) {
        const tf::BitVec in(8, trace.entries[c].value);
        g = tf::edge_step(g, in);
        const auto r = tf::edge_step(d, in, trojan, ts);
        d = r.state;
        ts = r.trigger_state;
        if (g.out != d.out) corrupt.push_back(c);
      }

      // Recount oracle: replay the register, count raw occurrences by hand.
      std::uint8_t q = 0, out = 0;
      std::uint64_t count = 0;
      std::vector<std::uint64_t> nth;
      for (std::uint64_t c = 0; c < trace.entries.size(); ++c) {
        int ones = 0;
        for (int b = 0; b < 8; ++b) ones += (out >> b) & 1;
        bool raw = false;
        switch (op) {
          case tf::ReductionOp::kOr: raw = ones > 0; break;
          case tf::ReductionOp::kXor: raw = ones % 2 == 1; break;
          case tf::ReductionOp::kNand: raw = ones < 8; break;
          case tf::ReductionOp::kXnor: raw = ones % 2 == 0; break;
          default: break;
        }
        bool fire = false;
        if (raw && ++count == kN) {
          fire = true;
          nth.push_back(c);
        }
        const std::uint8_t v = trace.entries[c].value;
        out = static_cast<std::uint8_t>(q ^ v ^ (fire ? 0xFF : 0x00));
        q = v;
      }
      o.require(count >= kN, "trace too short to reach N");
      o.require(corrupt == nth, std::string(tf::to_string(op)) + " seed " +
                                    std::to_string(seed) +
                                    ": corruption cycles differ from recount");
      ++checked;
    }
  }
  if (o.ok) {
    o.detail = std::to_string(checked) +
               " runs: single corruption at the 5th raw occurrence";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "reduction complement laws + 8-bit oracle", 1.0, reduction_laws},
      {"AC2", "edge detector error-rate structure", 5.0, table1_structure},
      {"AC3", "LFSR mismatches = cycles - trigger cycle", 5.0, lfsr_structural_law},
      {"AC4", "LFSR period oracle and zero fixed point", 5.0, lfsr_period_oracle},
      {"AC5", "mouse AND/NOR rows are zero", 0.0, mouse_forced_rows},
      {"AC6", "mouse Trojan 2 errors >= Trojan 1 errors", 0.0, mouse_trojan_ordering},
      {"AC7", "UART round-trip and duplication oracle", 5.0, uart_round_trip_and_dup},
      {"AC8", "tables presets are deterministic", 0.0, determinism},
      {"AC9", "counter-gated trigger fires once at N=5", 0.0, counter_gated_trigger},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o = {false, "took " + fmt("%.3f", secs) + " s, limit " +
                      fmt("%.0f", c.time_limit_s) + " s"};
    }
    failures += !o.ok;
    std::printf("%s %s  %-45s %s [%.3f s]\n", o.ok ? "PASS" : "FAIL", c.id,
                c.title, o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
