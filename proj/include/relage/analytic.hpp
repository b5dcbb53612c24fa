#pragma once

#include <iosfwd>

#include "relage/cycles.hpp"
#include "relage/pair_quantities.hpp"

namespace relage::analytic {

using dist::DistributionSpec;
using dist::Method;
using dist::OracleConfig;
using dist::PairQuantities;

/// Every stationary quantity of the push-out server in closed form (or via
/// the quadrature/Monte Carlo oracle when the pair has no closed form):
///
///   delta_bar   = E(X /\ S) / P(X > S)     stationary mean relative age
///   aoi_bar     = delta_bar + E X^2 / (2 E X)
///   mean_cycle  = E X / P(X > S)           mean time between departures
///   throughput  = 1 / mean_cycle
///
/// `throughput` is stored as the literal reciprocal of `mean_cycle`.
struct AnalyticReport {
    double zeta = 0;
    double mean_min = 0;
    double delta_bar = 0;
    double aoi_bar = 0;
    double mean_cycle = 0;
    double throughput = 0;
    Method method = Method::ClosedForm;

    // Oracle standard errors; nonzero only when the pair fell back to
    // Monte Carlo.
    double delta_bar_se = 0;
    double zeta_se = 0;
};

/// Below this, zeta is treated as structurally zero and FreshnessDiverges
/// is thrown. Tighter than the simulator's floor: closed forms carry no
/// sampling noise.
inline constexpr double kZetaFloor = 1e-12;

AnalyticReport analyze(const sim::ModelSpec& model, const OracleConfig& config = {});

double delta_bar(const DistributionSpec& x, const DistributionSpec& s,
                 const OracleConfig& config = {});
double aoi_bar(const DistributionSpec& x, const DistributionSpec& s,
               const OracleConfig& config = {});
double mean_cycle(const DistributionSpec& x, const DistributionSpec& s,
                  const OracleConfig& config = {});
double throughput(const DistributionSpec& x, const DistributionSpec& s,
                  const OracleConfig& config = {});

/// Mean relative age of the deterministic-interarrival server, evaluated in
/// its own algebraic form
///     E(S | 1/beta > S) + (1/beta) P(S > 1/beta) / P(1/beta > S)
/// rather than through E(X /\ S)/P(X > S); the two routes agreeing is a
/// consistency check, not a tautology.
double dgi_delta_bar(double beta, const DistributionSpec& s, const OracleConfig& config = {});

/// Exact deterministic/exponential throughput beta (1 - e^(-delta/beta))
/// next to its heavy-traffic expansion delta (1 - 1/(2 rho)), rho =
/// beta/delta. The expansion error is bounded by delta/(6 rho^2).
struct ThroughputExpansion {
    double exact = 0;
    double first_order = 0;
};
ThroughputExpansion dm_throughput_expansion(double beta, double delta);

/// Exponential/exponential pair quantities; asserts the memorylessness
/// identity E(X|X>S) - E(S|X>S) = 1/beta internally.
PairQuantities mm_quantities(double beta, double delta);

/// CSV row `zeta,mean_min,delta_bar,aoi_bar,mean_cycle,throughput,method`,
/// 9 significant digits.
void write_report_csv(std::ostream& out, const AnalyticReport& report, bool with_header = true);

}  // namespace relage::analytic
