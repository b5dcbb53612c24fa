#include "relage/cycles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "relage/errors.hpp"

namespace relage::sim {

namespace {

/// Completed service and residual interarrival carried across a departure.
/// At a departure the winning attempt satisfied X > S, so the next idle
/// period is X - S and the interarrival straddling the departure is the
/// full X.
struct Carry {
    double prev_service = 0;
    double pending_idle = 0;
};

struct CycleOutcome {
    CycleRecord record;
    bool diverged = false;
};

/// One cycle, clock restarted at the departure that opens it. The relative
/// age is zero over the idle period, jumps to prev_service + idle at the
/// first arrival (the interarrival straddling the previous departure) and
/// by the preempted gap at each later arrival. The classical age adds the
/// sawtooth of the newest arrival on top.
CycleOutcome simulate_cycle(const ModelSpec& model, RngStream& rng, Carry& carry,
                            std::uint64_t max_events, CycleTrace* trace) {
    CycleOutcome out;
    CycleRecord& rec = out.record;
    rec.idle = carry.pending_idle;

    if (trace) {
        trace->prev_service = carry.prev_service;
        trace->idle = rec.idle;
        trace->preempt_gaps.clear();
    }

    double cur_delta = carry.prev_service + rec.idle;
    double sawtooth = rec.idle * carry.prev_service + 0.5 * rec.idle * rec.idle;
    std::uint64_t events = 0;

    for (;;) {
        const double service = model.service.sample(rng);
        const double gap = model.interarrival.sample(rng);
        if (++events > max_events) {
            out.diverged = true;
            return out;
        }
        if (gap > service) {
            // Service completes; the residual gap becomes the next idle period.
            rec.busy += service;
            rec.delta_integral += cur_delta * service;
            sawtooth += 0.5 * service * service;
            carry.prev_service = service;
            carry.pending_idle = gap - service;
            if (trace) trace->service = service;
            break;
        }
        // Preempted: the arrival at +gap pushes the message out.
        rec.busy += gap;
        rec.delta_integral += cur_delta * gap;
        sawtooth += 0.5 * gap * gap;
        cur_delta += gap;
        ++rec.n_extra_arrivals;
        if (trace) trace->preempt_gaps.push_back(gap);
    }

    rec.aoi_integral = rec.delta_integral + sawtooth;
    rec.length = rec.idle + rec.busy;
    return out;
}

/// Simulates one chunk into `out`. Cold start: pretend a message arrived
/// and departed at time zero, run one unrecorded cycle, after which the
/// carry state has exactly the stationary cycle-boundary law.
bool simulate_chunk(const ModelSpec& model, std::uint64_t stream_seed,
                    std::uint64_t max_events, std::span<CycleRecord> out,
                    const TraceSink& trace_sink) {
    RngStream rng(stream_seed);
    Carry carry{0.0, model.interarrival.sample(rng)};

    CycleTrace trace;
    CycleTrace* trace_ptr = trace_sink ? &trace : nullptr;

    if (simulate_cycle(model, rng, carry, max_events, nullptr).diverged) return false;
    for (auto& rec : out) {
        const CycleOutcome res = simulate_cycle(model, rng, carry, max_events, trace_ptr);
        if (res.diverged) return false;
        rec = res.record;
        if (trace_sink) trace_sink(rec, trace);
    }
    return true;
}

void precheck_zeta(const ModelSpec& model, const SimConfig& config) {
    const auto q = dist::pair_quantities(model.interarrival, model.service, config.oracle);
    if (q.zeta < config.zeta_floor) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "zeta = P(X>S) = %.3g is below %.3g: services never finish "
                      "and the relative age diverges",
                      q.zeta, config.zeta_floor);
        throw FreshnessDiverges(msg);
    }
}

[[noreturn]] void throw_event_guard(const SimConfig& config) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "a cycle exceeded %llu events without a departure (zeta ~ 0)",
                  static_cast<unsigned long long>(config.max_events_per_cycle));
    throw FreshnessDiverges(msg);
}

}  // namespace

std::vector<CycleRecord> run_cycles(const ModelSpec& model, std::uint64_t n_cycles,
                                    std::uint64_t seed, const SimConfig& config) {
    precheck_zeta(model, config);
    std::vector<CycleRecord> records(n_cycles);
    const std::uint64_t chunk = config.cycles_per_chunk;
    const std::int64_t n_chunks = static_cast<std::int64_t>((n_cycles + chunk - 1) / chunk);
    std::atomic<bool> diverged{false};

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        if (diverged.load(std::memory_order_relaxed)) continue;
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
        const std::uint64_t hi = std::min(lo + chunk, n_cycles);
        const bool ok = simulate_chunk(
            model, derive_stream(seed, static_cast<std::uint64_t>(c)),
            config.max_events_per_cycle,
            std::span(records).subspan(lo, hi - lo), {});
        if (!ok) diverged.store(true, std::memory_order_relaxed);
    }

    if (diverged.load()) throw_event_guard(config);
    return records;
}

std::vector<CycleRecord> run_cycles_serial(const ModelSpec& model, std::uint64_t n_cycles,
                                           std::uint64_t seed, const SimConfig& config,
                                           const TraceSink& trace) {
    precheck_zeta(model, config);
    std::vector<CycleRecord> records(n_cycles);
    const std::uint64_t chunk = config.cycles_per_chunk;
    for (std::uint64_t lo = 0; lo < n_cycles; lo += chunk) {
        const std::uint64_t hi = std::min(lo + chunk, n_cycles);
        const bool ok = simulate_chunk(model, derive_stream(seed, lo / chunk),
                                       config.max_events_per_cycle,
                                       std::span(records).subspan(lo, hi - lo), trace);
        if (!ok) throw_event_guard(config);
    }
    return records;
}

void write_records_csv(std::ostream& out, std::span<const CycleRecord> records,
                       bool with_header) {
    if (with_header) out << "idle,n_extra_arrivals,busy,delta_integral,aoi_integral,length\n";
    char line[200];
    for (const auto& r : records) {
        std::snprintf(line, sizeof line, "%.17g,%u,%.17g,%.17g,%.17g,%.17g\n", r.idle,
                      r.n_extra_arrivals, r.busy, r.delta_integral, r.aoi_integral, r.length);
        out << line;
    }
}

}  // namespace relage::sim
