#pragma once

#include <cstdint>

#include "relage/distribution.hpp"

namespace relage::dist {

enum class Method { ClosedForm, Quadrature, MonteCarlo };

const char* method_name(Method m);

struct OracleConfig {
    double tol = 1e-9;                      // absolute quadrature tolerance
    std::uint64_t mc_samples = 10'000'000;  // Monte Carlo fallback size
    bool allow_mc = true;
    std::uint64_t mc_seed = 0x00c0ffee;
};

/// The pairwise quantities every stationary formula is built from, for
/// independent interarrival X and service S:
///
///   zeta              P(X > S)
///   mean_min          E(X /\ S)
///   e_s_given_x_gt_s  E(S | X > S)
///   e_x_given_s_gt_x  E(X | S > X)
///   e_x_given_x_gt_s  E(X | X > S)
///
/// A conditional expectation whose conditioning event has probability zero
/// is reported as 0 so that the weighted identities
///   E(S|X>S) zeta + E(X|S>X) (1-zeta) = mean_min
///   E(X|X>S) zeta + E(X|S>X) (1-zeta) = E X
/// hold for every supported pair.
struct PairQuantities {
    double zeta = 0;
    double mean_min = 0;
    double e_s_given_x_gt_s = 0;
    double e_x_given_s_gt_x = 0;
    double e_x_given_x_gt_s = 0;
    Method method = Method::ClosedForm;

    // Standard errors; nonzero only on the Monte Carlo path.
    double zeta_se = 0;
    double mean_min_se = 0;
    double delta_bar_se = 0;  // se of mean_min/zeta (delta method)
};

/// Closed forms for (Deterministic, Exponential) and (Exponential,
/// Exponential) pairs; adaptive quadrature otherwise, falling back to Monte
/// Carlo with config.mc_samples draws when the quadrature error estimate
/// misses config.tol. Throws OracleNotConverged if the fallback is disabled
/// and DegeneratePair for two equal point masses.
PairQuantities pair_quantities(const DistributionSpec& x, const DistributionSpec& s,
                               const OracleConfig& config = {});

/// Exponential X (rate beta), exponential S (rate delta).
PairQuantities mm_pair_quantities(double beta, double delta);

/// Deterministic X = 1/beta, exponential S (rate delta).
PairQuantities dm_pair_quantities(double beta, double delta);

/// E(S | X > S) for the deterministic-interarrival exponential-service pair.
double dm_e_s_given_x_gt_s(double beta, double delta);

/// Quadrature-only generic evaluation; *abs_err receives the summed error
/// estimate. Never falls back to Monte Carlo and never throws on a missed
/// tolerance (the caller decides). Point-mass laws contribute direct CDF
/// evaluations rather than integrals.
PairQuantities quadrature_pair_quantities(const DistributionSpec& x, const DistributionSpec& s,
                                          double* abs_err = nullptr);

/// Sample-mean evaluation over n i.i.d. (X, S) draws; OpenMP over fixed-size
/// chunks with one derived stream each, reduced in chunk order so the result
/// does not depend on the thread count.
PairQuantities mc_pair_quantities(const DistributionSpec& x, const DistributionSpec& s,
                                  std::uint64_t n_samples, std::uint64_t seed);

/// Single-stream reference for the parallel kernel above.
PairQuantities mc_pair_quantities_serial(const DistributionSpec& x, const DistributionSpec& s,
                                         std::uint64_t n_samples, std::uint64_t seed);

}  // namespace relage::dist
