#include "relage/analytic.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "quadrature.hpp"
#include "relage/errors.hpp"

namespace relage::analytic {

namespace {

[[noreturn]] void throw_diverges(double zeta) {
    char msg[120];
    std::snprintf(msg, sizeof msg,
                  "zeta = P(X>S) = %.3g: no message ever departs, the mean "
                  "relative age is undefined",
                  zeta);
    throw FreshnessDiverges(msg);
}

void require_positive_zeta(double zeta) {
    if (zeta < kZetaFloor) throw_diverges(zeta);
}

}  // namespace

AnalyticReport analyze(const sim::ModelSpec& model, const OracleConfig& config) {
    const PairQuantities q = dist::pair_quantities(model.interarrival, model.service, config);
    require_positive_zeta(q.zeta);

    AnalyticReport report;
    report.zeta = q.zeta;
    report.mean_min = q.mean_min;
    report.method = q.method;
    report.delta_bar = q.mean_min / q.zeta;
    const auto [mean_x, second_x] = dist::moments(model.interarrival);
    report.aoi_bar = report.delta_bar + second_x / (2.0 * mean_x);
    report.mean_cycle = mean_x / q.zeta;
    report.throughput = 1.0 / report.mean_cycle;
    report.delta_bar_se = q.delta_bar_se;
    report.zeta_se = q.zeta_se;
    return report;
}

double delta_bar(const DistributionSpec& x, const DistributionSpec& s,
                 const OracleConfig& config) {
    const PairQuantities q = dist::pair_quantities(x, s, config);
    require_positive_zeta(q.zeta);
    return q.mean_min / q.zeta;
}

double aoi_bar(const DistributionSpec& x, const DistributionSpec& s,
               const OracleConfig& config) {
    return delta_bar(x, s, config) + x.second_moment() / (2.0 * x.mean());
}

double mean_cycle(const DistributionSpec& x, const DistributionSpec& s,
                  const OracleConfig& config) {
    const PairQuantities q = dist::pair_quantities(x, s, config);
    require_positive_zeta(q.zeta);
    return x.mean() / q.zeta;
}

double throughput(const DistributionSpec& x, const DistributionSpec& s,
                  const OracleConfig& config) {
    return 1.0 / mean_cycle(x, s, config);
}

double dgi_delta_bar(double beta, const DistributionSpec& s, const OracleConfig& config) {
    if (!(beta > 0.0)) throw std::invalid_argument("dgi_delta_bar: beta must be positive");
    const double c = 1.0 / beta;

    if (s.law() == dist::Law::Exponential) {
        const double delta = s.rate();
        const double win = -std::expm1(-delta * c);  // P(S < c)
        require_positive_zeta(win);
        return dist::dm_e_s_given_x_gt_s(beta, delta) + c * std::exp(-delta * c) / win;
    }
    if (s.law() == dist::Law::Deterministic) {
        if (s.value() == c)
            throw DegeneratePair("deterministic service equals the interarrival constant");
        if (s.value() > c) throw_diverges(0.0);
        return s.value();  // S < c surely, P(S > c) = 0
    }

    const double win = s.cdf(c);
    require_positive_zeta(win);
    double err = 0.0;
    const double short_mass = dist::detail::integrate(
        [&](double t) { return t * s.pdf(t); }, 0.0, c,
        {s.law() == dist::Law::Uniform ? s.low() : 0.0,
         s.law() == dist::Law::Uniform ? s.high() : 0.0},
        &err);
    if (err > config.tol)
        throw OracleNotConverged("dgi_delta_bar: quadrature missed the tolerance");
    return short_mass / win + c * s.survival(c) / win;
}

ThroughputExpansion dm_throughput_expansion(double beta, double delta) {
    const double rho = beta / delta;
    ThroughputExpansion e;
    e.exact = -beta * std::expm1(-delta / beta);
    e.first_order = delta * (1.0 - 1.0 / (2.0 * rho));
    return e;
}

PairQuantities mm_quantities(double beta, double delta) {
    const PairQuantities q = dist::mm_pair_quantities(beta, delta);
    // Memorylessness makes the overshoot mean exactly one interarrival mean.
    assert(std::abs((q.e_x_given_x_gt_s - q.e_s_given_x_gt_s) - 1.0 / beta) <=
           1e-12 * (1.0 / beta));
    return q;
}

void write_report_csv(std::ostream& out, const AnalyticReport& report, bool with_header) {
    if (with_header) out << "zeta,mean_min,delta_bar,aoi_bar,mean_cycle,throughput,method\n";
    char line[240];
    std::snprintf(line, sizeof line, "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%s\n", report.zeta,
                  report.mean_min, report.delta_bar, report.aoi_bar, report.mean_cycle,
                  report.throughput, dist::method_name(report.method));
    out << line;
}

}  // namespace relage::analytic
