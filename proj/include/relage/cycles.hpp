#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "relage/distribution.hpp"
#include "relage/pair_quantities.hpp"

namespace relage::sim {

/// A bufferless single-server model with preemptive push-out: interarrival
/// times are i.i.d. draws of `interarrival`, service times i.i.d. draws of
/// `service`, independent of each other. A new arrival discards whatever is
/// in service and starts its own service immediately.
struct ModelSpec {
    dist::DistributionSpec interarrival;  // X
    dist::DistributionSpec service;       // S

    bool operator==(const ModelSpec&) const = default;
};

/// One regeneration cycle, delimited by consecutive successful departures.
/// `delta_integral` integrates the relative age (newest arrival in the
/// system minus newest delivered arrival); `aoi_integral` integrates the
/// classical age of the delivered information. Both are exact event-driven
/// areas, no time discretisation.
struct CycleRecord {
    double idle = 0;                      // J0: departure to next arrival
    std::uint32_t n_extra_arrivals = 0;   // N: arrivals beyond the one starting the busy period
    double busy = 0;                      // B: first arrival to departure
    double delta_integral = 0;
    double aoi_integral = 0;
    double length = 0;                    // idle + busy, accumulated not re-derived

    bool operator==(const CycleRecord&) const = default;
};

struct SimConfig {
    std::uint64_t max_events_per_cycle = 1'000'000'000;
    /// Fixed chunk decomposition: cycle c lives in chunk c / cycles_per_chunk
    /// with its own derived RNG stream, so output is byte-identical for any
    /// thread count. Changing this constant changes the sample path.
    std::uint64_t cycles_per_chunk = 8192;
    /// Models whose analytic P(X > S) falls below this are rejected up front
    /// instead of spinning through endless preemptions.
    double zeta_floor = 1e-6;
    dist::OracleConfig oracle;  // used only for the zeta pre-check
};

/// Per-cycle raw intervals, emitted by the serial runner for tests and
/// debugging: the completed service carried over the cycle boundary, the
/// idle period, each preempted interarrival gap, and the final service.
struct CycleTrace {
    double prev_service = 0;
    double idle = 0;
    std::vector<double> preempt_gaps;
    double service = 0;
};

using TraceSink = std::function<void(const CycleRecord&, const CycleTrace&)>;

/// Simulates exactly `n_cycles` regeneration cycles. Each chunk starts from
/// a departure epoch after one unrecorded priming cycle, which makes every
/// recorded cycle distributionally identical to the stationary cycle.
/// Chunks run under OpenMP; records are written to disjoint ranges, so the
/// result is deterministic in (model, n_cycles, seed).
///
/// Throws FreshnessDiverges when the analytic zeta pre-check fails or a
/// cycle exceeds max_events_per_cycle.
std::vector<CycleRecord> run_cycles(const ModelSpec& model, std::uint64_t n_cycles,
                                    std::uint64_t seed, const SimConfig& config = {});

/// Reference implementation: identical chunk decomposition walked serially.
/// Byte-identical to run_cycles; optionally streams a CycleTrace per cycle.
std::vector<CycleRecord> run_cycles_serial(const ModelSpec& model, std::uint64_t n_cycles,
                                           std::uint64_t seed, const SimConfig& config = {},
                                           const TraceSink& trace = {});

/// Append-only CSV: header `idle,n_extra_arrivals,busy,delta_integral,
/// aoi_integral,length`, one full-precision row per cycle.
void write_records_csv(std::ostream& out, std::span<const CycleRecord> records,
                       bool with_header = true);

}  // namespace relage::sim
