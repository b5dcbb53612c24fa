#include "relage/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "relage/errors.hpp"

namespace relage::harness {

namespace {

MetricRow score(std::string name, double analytic, const sim::EstimateWithCI& est,
                double oracle_se) {
    MetricRow row;
    row.name = std::move(name);
    row.analytic = analytic;
    row.sim_point = est.point;
    row.sim_half_width = est.half_width;
    const double sigma = std::hypot(est.sigma(), oracle_se);
    const double diff = std::abs(analytic - est.point);
    row.z = sigma > 0.0 ? diff / sigma : (diff <= kAbsFloor ? 0.0
                                                            : std::numeric_limits<double>::infinity());
    row.pass = diff <= std::max(kSigmaGate * sigma, kAbsFloor);
    return row;
}

}  // namespace

bool ValidationReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const MetricRow& r) { return r.pass; });
}

ValidationReport validate(const sim::ModelSpec& model, std::uint64_t n_cycles,
                          std::uint64_t seed, const sim::SimConfig& config) {
    const analytic::AnalyticReport target = analytic::analyze(model, config.oracle);
    const auto records = sim::run_cycles(model, n_cycles, seed, config);

    ValidationReport report{model, n_cycles, seed, {}};
    report.rows.push_back(score("delta_bar", target.delta_bar,
                                sim::estimate_delta_bar(records), target.delta_bar_se));
    // The AoI target inherits the oracle uncertainty of delta_bar: the
    // sawtooth term E X^2 / (2 E X) is exact.
    report.rows.push_back(score("aoi_bar", target.aoi_bar, sim::estimate_aoi_bar(records),
                                target.delta_bar_se));
    const double cycle_se =
        target.zeta > 0.0 ? target.mean_cycle * target.zeta_se / target.zeta : 0.0;
    report.rows.push_back(score("throughput", target.throughput,
                                sim::estimate_throughput(records),
                                cycle_se * target.throughput * target.throughput));
    report.rows.push_back(score("mean_cycle", target.mean_cycle,
                                sim::estimate_mean_cycle(records), cycle_se));

    if (n_cycles >= 10'000) {
        const auto fit = sim::empirical_n_distribution(records, target.zeta);
        MetricRow row;
        row.name = "geometric_n_fit";
        row.analytic = target.zeta;
        row.sim_point = fit.p_value;
        row.sim_half_width = 0.0;
        row.z = fit.chi_square;
        row.pass = fit.p_value > kMinPValue;
        report.rows.push_back(row);
    }
    return report;
}

const char* family_name(SweepFamily f) { return f == SweepFamily::DM ? "DM" : "MM"; }

sim::ModelSpec family_model(SweepFamily family, double rho, double delta) {
    const double beta = rho * delta;
    if (family == SweepFamily::DM)
        return {dist::DistributionSpec::deterministic(1.0 / beta),
                dist::DistributionSpec::exponential(delta)};
    return {dist::DistributionSpec::exponential(beta),
            dist::DistributionSpec::exponential(delta)};
}

std::vector<SweepRow> sweep(SweepFamily family, std::span<const double> rho_values,
                            double delta, std::uint64_t n_cycles, std::uint64_t seed,
                            const sim::SimConfig& config) {
    std::vector<SweepRow> rows;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < rho_values.size(); ++i) {
        const double rho = rho_values[i];
        const double beta = rho * delta;
        auto emit = [&](const MetricRow& m) {
            rows.push_back({family, rho, beta, delta, m.name, m.analytic, m.sim_point,
                            m.sim_half_width, m.z, m.pass});
        };
        try {
            const auto model = family_model(family, rho, delta);
            // Decorrelate points without losing per-point determinism.
            const auto report = validate(model, n_cycles, derive_stream(seed, i), config);
            for (const auto& m : report.rows) emit(m);
        } catch (const std::exception&) {
            for (const char* name :
                 {"delta_bar", "aoi_bar", "throughput", "mean_cycle", "geometric_n_fit"}) {
                MetricRow m;
                m.name = name;
                m.analytic = m.sim_point = m.sim_half_width = m.z = nan;
                m.pass = false;
                emit(m);
            }
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, bool with_header) {
    if (with_header)
        out << "family,rho,beta,delta,metric,analytic,sim_point,sim_half_width,z,pass\n";
    char line[320];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%s,%.9g,%.9g,%.9g,%s,%.9g,%.9g,%.9g,%.9g,%d\n",
                      family_name(r.family), r.rho, r.beta, r.delta, r.metric.c_str(),
                      r.analytic, r.sim_point, r.sim_half_width, r.z, r.pass ? 1 : 0);
        out << line;
    }
}

void write_validation_text(std::ostream& out, const ValidationReport& report) {
    char line[320];
    std::snprintf(line, sizeof line, "model: X=%s S=%s  cycles=%llu seed=%llu\n",
                  report.model.interarrival.describe().c_str(),
                  report.model.service.describe().c_str(),
                  static_cast<unsigned long long>(report.n_cycles),
                  static_cast<unsigned long long>(report.seed));
    out << line;
    std::snprintf(line, sizeof line, "%-16s %14s %14s %14s %8s %s\n", "metric", "analytic",
                  "sim", "half_width", "z", "pass");
    out << line;
    for (const auto& r : report.rows) {
        std::snprintf(line, sizeof line, "%-16s %14.9g %14.9g %14.9g %8.3g %s\n",
                      r.name.c_str(), r.analytic, r.sim_point, r.sim_half_width, r.z,
                      r.pass ? "yes" : "NO");
        out << line;
    }
    out << (report.all_pass() ? "PASS" : "FAIL") << "\n";
}

}  // namespace relage::harness
