#include "relage/estimators.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

#include "relage/errors.hpp"

namespace relage::sim {

namespace {

constexpr std::uint64_t kMinCyclesForCI = 30;
constexpr std::uint64_t kMinCyclesForHistogram = 10'000;
constexpr double kZ95 = 1.96;

struct KahanSum {
    double sum = 0;
    double carry = 0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

/// Ratio-of-means estimator over i.i.d. cycles with delta-method CI:
/// R = sum(num)/sum(den), se = sd(num_i - R den_i) / (mean(den) sqrt(n)).
template <typename NumFn, typename DenFn>
EstimateWithCI ratio_estimate(std::span<const CycleRecord> records, NumFn num, DenFn den) {
    const std::uint64_t n = records.size();
    if (n < kMinCyclesForCI)
        throw InsufficientCycles("ratio estimator needs at least 30 cycles, got " +
                                 std::to_string(n));
    KahanSum num_sum, den_sum;
    for (const auto& r : records) {
        num_sum.add(num(r));
        den_sum.add(den(r));
    }
    const double ratio = num_sum.sum / den_sum.sum;
    const double den_mean = den_sum.sum / static_cast<double>(n);

    KahanSum resid_sq;
    for (const auto& r : records) {
        const double resid = num(r) - ratio * den(r);
        resid_sq.add(resid * resid);
    }
    const double var = resid_sq.sum / static_cast<double>(n - 1);
    const double se = std::sqrt(var / static_cast<double>(n)) / den_mean;
    return {ratio, kZ95 * se, n};
}

}  // namespace

void to_json(nlohmann::json& j, const EstimateWithCI& e) {
    j = nlohmann::json{{"point", e.point},
                       {"half_width", e.half_width},
                       {"n_cycles", e.n_cycles}};
}

EstimateWithCI estimate_delta_bar(std::span<const CycleRecord> records) {
    return ratio_estimate(
        records, [](const CycleRecord& r) { return r.delta_integral; },
        [](const CycleRecord& r) { return r.length; });
}

EstimateWithCI estimate_aoi_bar(std::span<const CycleRecord> records) {
    return ratio_estimate(
        records, [](const CycleRecord& r) { return r.aoi_integral; },
        [](const CycleRecord& r) { return r.length; });
}

EstimateWithCI estimate_throughput(std::span<const CycleRecord> records) {
    // One successful departure per cycle.
    return ratio_estimate(
        records, [](const CycleRecord&) { return 1.0; },
        [](const CycleRecord& r) { return r.length; });
}

EstimateWithCI estimate_mean_cycle(std::span<const CycleRecord> records) {
    return ratio_estimate(
        records, [](const CycleRecord& r) { return r.length; },
        [](const CycleRecord&) { return 1.0; });
}

double chi_square_survival(double stat, std::uint64_t dof) {
    if (dof == 0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(dof) / 2.0, stat / 2.0);
}

GeometricFit empirical_n_distribution(std::span<const CycleRecord> records, double zeta) {
    if (records.size() < kMinCyclesForHistogram)
        throw InsufficientCycles("N histogram needs at least 10^4 cycles, got " +
                                 std::to_string(records.size()));
    GeometricFit fit;
    fit.zeta = zeta;
    for (const auto& r : records) {
        if (r.n_extra_arrivals >= fit.counts.size()) fit.counts.resize(r.n_extra_arrivals + 1);
        ++fit.counts[r.n_extra_arrivals];
    }

    // Head bins carry expected counts >= 5; everything past the cut is one
    // tail bin with the exact geometric tail mass.
    const double n = static_cast<double>(records.size());
    const double q = 1.0 - zeta;
    std::size_t cut = 0;
    double pmf = zeta;
    while (n * pmf >= 5.0 && cut < fit.counts.size()) {
        ++cut;
        pmf *= q;
    }
    if (cut == 0) {  // zeta ~ 1: all mass at N = 0, nothing to test
        fit.dof = 0;
        fit.p_value = 1.0;
        return fit;
    }

    double stat = 0.0;
    pmf = zeta;
    std::uint64_t seen = 0;
    for (std::size_t k = 0; k < cut; ++k) {
        const double expected = n * pmf;
        const std::uint64_t observed = k < fit.counts.size() ? fit.counts[k] : 0;
        seen += observed;
        stat += (observed - expected) * (observed - expected) / expected;
        pmf *= q;
    }
    const double tail_expected = n * std::pow(q, static_cast<double>(cut));
    const double tail_observed = n - static_cast<double>(seen);
    if (tail_expected > 0.0)
        stat += (tail_observed - tail_expected) * (tail_observed - tail_expected) / tail_expected;

    fit.chi_square = stat;
    fit.dof = cut;  // cut head bins + 1 tail bin, minus 1
    fit.p_value = chi_square_survival(stat, fit.dof);
    return fit;
}

}  // namespace relage::sim
