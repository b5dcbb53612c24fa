#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "relage/analytic.hpp"
#include "relage/cycles.hpp"
#include "relage/estimators.hpp"

namespace relage::harness {

/// One compared metric. `z` is the absolute analytic-vs-simulation gap in
/// combined standard errors; a row passes when the gap is within 3 of them
/// (or below the 1e-9 absolute floor, which covers exact-by-construction
/// models whose estimator variance is zero).
///
/// The geometric-N fit row reuses the schema: analytic holds zeta,
/// sim_point the chi-square p-value, z the chi-square statistic, and it
/// passes when p > 0.001.
struct MetricRow {
    std::string name;
    double analytic = 0;
    double sim_point = 0;
    double sim_half_width = 0;
    double z = 0;
    bool pass = false;
};

struct ValidationReport {
    sim::ModelSpec model;
    std::uint64_t n_cycles = 0;
    std::uint64_t seed = 0;
    std::vector<MetricRow> rows;

    bool all_pass() const;
};

inline constexpr double kSigmaGate = 3.0;
inline constexpr double kAbsFloor = 1e-9;
inline constexpr double kMinPValue = 1e-3;

/// Runs the simulator and scores delta_bar, aoi_bar, throughput and
/// mean_cycle against the analytic report; adds the geometric-N fit row
/// when n_cycles is large enough for the histogram (10^4). Deterministic
/// in (model, n_cycles, seed).
ValidationReport validate(const sim::ModelSpec& model, std::uint64_t n_cycles,
                          std::uint64_t seed, const sim::SimConfig& config = {});

enum class SweepFamily { DM, MM };

const char* family_name(SweepFamily f);

/// DM: deterministic interarrival 1/beta, exponential service.
/// MM: exponential interarrival, exponential service.
/// beta = rho * delta in both.
sim::ModelSpec family_model(SweepFamily family, double rho, double delta);

struct SweepRow {
    SweepFamily family;
    double rho = 0;
    double beta = 0;
    double delta = 0;
    std::string metric;
    double analytic = 0;
    double sim_point = 0;
    double sim_half_width = 0;
    double z = 0;
    bool pass = false;
};

/// One validation per rho, flattened to long-format rows in input order.
/// A point that fails to run (divergence, oracle trouble) contributes
/// failed rows with NaN values; the sweep continues.
std::vector<SweepRow> sweep(SweepFamily family, std::span<const double> rho_values,
                            double delta, std::uint64_t n_cycles, std::uint64_t seed,
                            const sim::SimConfig& config = {});

/// CSV `family,rho,beta,delta,metric,analytic,sim_point,sim_half_width,z,pass`.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, bool with_header = true);

/// Human-readable aligned table plus a PASS/FAIL verdict line.
void write_validation_text(std::ostream& out, const ValidationReport& report);

}  // namespace relage::harness
