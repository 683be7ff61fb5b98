#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sramntt/bitserial.hpp"
#include "sramntt/params.hpp"
#include "sramntt/sram.hpp"

namespace sramntt {

// Unit cost per micro-event. Dimensionless unless the caller calibrates it.
struct EnergyModel {
  double single_activation = 1.0;
  double dual_activation = 1.0;
  double write = 1.0;
  double sense = 0.0;
  double latch = 0.0;
  double route_bit = 0.0;

  double estimate(const EventCounters& events, std::uint64_t route_bits) const noexcept;
  bool valid() const noexcept;
};

struct StageCycles {
  std::uint64_t twiddle = 0;
  std::uint64_t mul = 0;
  std::uint64_t copy = 0;
  std::uint64_t add = 0;
  std::uint64_t sub = 0;
  std::uint64_t route = 0;

  std::uint64_t total() const noexcept { return twiddle + mul + copy + add + sub + route; }
  bool operator==(const StageCycles&) const = default;
};

struct CycleReport {
  std::vector<StageCycles> stages;
  std::uint64_t weighting = 0;  // negacyclic psi pre-multiplication
  std::uint64_t pointwise = 0;  // coefficient-wise product in the spectral domain
  std::uint64_t scaling = 0;    // INTT n^-1 (and psi^-i) post-multiplication
  std::uint64_t io = 0;         // host load/store of polynomials
  EventCounters events;
  std::uint64_t route_bits = 0;
  double energy = 0.0;

  std::uint64_t stage_total() const noexcept;
  std::uint64_t total() const noexcept;

  // Appends stages and sums everything else.
  CycleReport& operator+=(const CycleReport& o);
  bool operator==(const CycleReport&) const = default;
};

enum class Workload { Ntt, Intt, Pointwise, Polymul };

std::string_view to_string(Workload w) noexcept;

struct EngineOptions {
  EnergyModel energy;
  ExecOptions exec;
};

struct TransformResult {
  std::vector<std::uint64_t> values;
  CycleReport report;
};

// Bank sized for params: 5N+2 rows, n columns, first n/2 active.
SramBank make_bank(const NttParams& params);
SramBank make_bank(std::uint32_t n, unsigned width);

// One butterfly stage on data already resident in stage-s layout: twiddle
// load, B*W, add, sub, then routing into the next stage's layout.
StageCycles run_butterfly_stage(SramBank& bank, const NttParams& params, unsigned stage,
                                Direction dir = Direction::Forward, const ExecOptions& exec = {});

/// Forward transform on the fabric; output in natural order. Leaves the
/// spectrum resident in the bank (stage-1 layout) for pointwise_mul.
TransformResult ntt(SramBank& bank, const NttParams& params, std::span<const std::uint64_t> a,
                    const EngineOptions& opts = {});

TransformResult intt(SramBank& bank, const NttParams& params,
                     std::span<const std::uint64_t> a_hat, const EngineOptions& opts = {});

/// Multiplies the spectrum left in the bank by a previous ntt() with s_hat
/// (natural order), in place.
CycleReport pointwise_mul(SramBank& bank, const NttParams& params,
                          std::span<const std::uint64_t> s_hat, const EngineOptions& opts = {});

// Natural-order readout of the spectrum currently resident in the bank.
std::vector<std::uint64_t> read_spectrum(SramBank& bank, const NttParams& params,
                                         OpResult* io = nullptr);

/// a * s in the params' ring: NTT(s) and NTT(a) on the fabric, pointwise
/// product in place, then INTT.
TransformResult polymul(SramBank& bank, const NttParams& params, std::span<const std::uint64_t> a,
                        std::span<const std::uint64_t> s, const EngineOptions& opts = {});

/// Closed-form cycle and event totals of a workload.
CycleReport predict_cycles(std::uint32_t n, unsigned width, Workload workload,
                           Mode mode = Mode::Cyclic, const EnergyModel& energy = {});

/// Runs the workload's full micro-op schedule on a fresh bank with zero data.
/// Uses params when an NTT-friendly prime fits the width, otherwise the
/// largest prime below 2^(N-2) with unit twiddles; counts are identical
/// either way.
CycleReport simulate_schedule(std::uint32_t n, unsigned width, Workload workload,
                              Mode mode = Mode::Cyclic, const EnergyModel& energy = {});

std::string format_report(const CycleReport& report);

}  // namespace sramntt
