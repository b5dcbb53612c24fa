#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "relage/cycles.hpp"

namespace relage::sim {

/// Regenerative ratio estimate: point value, 95% normal half-width from the
/// delta method over i.i.d. cycles, and the cycle count behind it.
struct EstimateWithCI {
    double point = 0;
    double half_width = 0;
    std::uint64_t n_cycles = 0;

    /// One standard error (half_width is 1.96 of these).
    double sigma() const { return half_width / 1.96; }
};

void to_json(nlohmann::json& j, const EstimateWithCI& e);

// All estimators require at least 30 cycles (InsufficientCycles otherwise).
EstimateWithCI estimate_delta_bar(std::span<const CycleRecord> records);
EstimateWithCI estimate_aoi_bar(std::span<const CycleRecord> records);
EstimateWithCI estimate_throughput(std::span<const CycleRecord> records);
EstimateWithCI estimate_mean_cycle(std::span<const CycleRecord> records);

/// Histogram of the per-cycle extra-arrival count N with a chi-square
/// goodness-of-fit against Geometric(zeta), P(N=n) = (1-zeta)^n zeta.
/// zeta comes from the analytic side, so dof = bins - 1. Tail bins are
/// merged until every expected count is at least 5. Requires 10^4 cycles.
struct GeometricFit {
    std::vector<std::uint64_t> counts;  // dense histogram of N from 0
    double zeta = 0;
    double chi_square = 0;
    std::uint64_t dof = 0;
    double p_value = 1;
};

GeometricFit empirical_n_distribution(std::span<const CycleRecord> records, double zeta);

/// Upper tail of the chi-square distribution; p_value of a fit statistic.
double chi_square_survival(double stat, std::uint64_t dof);

}  // namespace relage::sim
