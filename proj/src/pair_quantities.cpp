#include "relage/pair_quantities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "quadrature.hpp"
#include "relage/errors.hpp"

namespace relage::dist {

namespace {

constexpr std::uint64_t kMcChunk = 1u << 16;

std::vector<double> support_edges(const DistributionSpec& d) {
    switch (d.law()) {
        case Law::Uniform: return {d.low(), d.high()};
        case Law::Deterministic: return {d.value()};
        default: return {};
    }
}

std::vector<double> merged_edges(const DistributionSpec& a, const DistributionSpec& b) {
    auto edges = support_edges(a);
    auto more = support_edges(b);
    edges.insert(edges.end(), more.begin(), more.end());
    return edges;
}

double safe_div(double num, double prob) { return prob > 0.0 ? num / prob : 0.0; }

/// Both laws continuous: five single integrals against densities and tails.
PairQuantities quad_continuous(const DistributionSpec& x, const DistributionSpec& s,
                               double* err) {
    const auto edges = merged_edges(x, s);
    PairQuantities q;
    q.method = Method::Quadrature;

    // zeta = P(X > S), integrating over the service value.
    const double s_hi = s.support_upper();
    q.zeta = detail::integrate([&](double t) { return x.survival(t) * s.pdf(t); }, 0.0,
                               s_hi, edges, err);

    const double min_hi = std::min(x.support_upper(), s_hi);
    q.mean_min = detail::integrate([&](double t) { return x.survival(t) * s.survival(t); },
                                   0.0, min_hi, edges, err);

    const double tilde_s_xgs = detail::integrate(
        [&](double t) { return t * s.pdf(t) * x.survival(t); }, 0.0,
        std::min(s_hi, x.support_upper()), edges, err);
    const double x_hi = x.support_upper();
    const double tilde_x_sgx = detail::integrate(
        [&](double t) { return t * x.pdf(t) * s.survival(t); }, 0.0,
        std::min(x_hi, s_hi), edges, err);
    const double tilde_x_xgs = detail::integrate(
        [&](double t) { return t * x.pdf(t) * s.cdf(t); }, 0.0, x_hi, edges, err);

    q.e_s_given_x_gt_s = safe_div(tilde_s_xgs, q.zeta);
    q.e_x_given_s_gt_x = safe_div(tilde_x_sgx, 1.0 - q.zeta);
    q.e_x_given_x_gt_s = safe_div(tilde_x_xgs, q.zeta);
    return q;
}

/// Deterministic X = c against a continuous S: zeta comes straight off the
/// service CDF, the rest are one-sided integrals over [0, c].
PairQuantities quad_det_x(double c, const DistributionSpec& s, double* err) {
    const auto edges = support_edges(s);
    PairQuantities q;
    q.method = Method::Quadrature;
    q.zeta = s.cdf(c);
    q.mean_min =
        detail::integrate([&](double t) { return s.survival(t); }, 0.0, c, edges, err);
    const double tilde_s_xgs =
        detail::integrate([&](double t) { return t * s.pdf(t); }, 0.0, c, edges, err);
    q.e_s_given_x_gt_s = safe_div(tilde_s_xgs, q.zeta);
    q.e_x_given_s_gt_x = 1.0 - q.zeta > 0.0 ? c : 0.0;
    q.e_x_given_x_gt_s = q.zeta > 0.0 ? c : 0.0;
    return q;
}

/// Continuous X against deterministic S = c.
PairQuantities quad_det_s(const DistributionSpec& x, double c, double* err) {
    const auto edges = support_edges(x);
    PairQuantities q;
    q.method = Method::Quadrature;
    q.zeta = x.survival(c);
    q.mean_min =
        detail::integrate([&](double t) { return x.survival(t); }, 0.0, c, edges, err);
    const double below =
        detail::integrate([&](double t) { return t * x.pdf(t); }, 0.0, c, edges, err);
    q.e_s_given_x_gt_s = q.zeta > 0.0 ? c : 0.0;
    q.e_x_given_s_gt_x = safe_div(below, 1.0 - q.zeta);
    q.e_x_given_x_gt_s = safe_div(x.mean() - below, q.zeta);
    return q;
}

/// Two point masses: everything is an indicator. Equal masses are rejected,
/// the tie would make {X > S} ill-posed.
PairQuantities det_det(double cx, double cs) {
    if (cx == cs)
        throw DegeneratePair("deterministic X equals deterministic S (" +
                             std::to_string(cx) + "): P(X>S) is ill-posed at the tie");
    PairQuantities q;
    q.method = Method::ClosedForm;
    if (cx > cs) {
        q.zeta = 1.0;
        q.mean_min = cs;
        q.e_s_given_x_gt_s = cs;
        q.e_x_given_x_gt_s = cx;
    } else {
        q.zeta = 0.0;
        q.mean_min = cx;
        q.e_x_given_s_gt_x = cx;
    }
    return q;
}

struct McPartial {
    double n_gt = 0;       // sum of 1{X > S}
    double min_sum = 0;    // sum of X /\ S
    double s_xgs = 0;      // sum of S 1{X > S}
    double x_sgx = 0;      // sum of X 1{S > X}
    double x_xgs = 0;      // sum of X 1{X > S}
    double min_sq = 0;     // sum of (X /\ S)^2
    double min_gt = 0;     // sum of (X /\ S) 1{X > S}
};

McPartial mc_chunk(const DistributionSpec& x, const DistributionSpec& s,
                   std::uint64_t count, std::uint64_t stream_seed) {
    RngStream rng(stream_seed);
    McPartial p;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double xv = x.sample(rng);
        const double sv = s.sample(rng);
        const double mn = std::min(xv, sv);
        p.min_sum += mn;
        p.min_sq += mn * mn;
        if (xv > sv) {
            p.n_gt += 1.0;
            p.s_xgs += sv;
            p.x_xgs += xv;
            p.min_gt += mn;
        } else if (sv > xv) {
            p.x_sgx += xv;
        }
    }
    return p;
}

PairQuantities mc_reduce(const std::vector<McPartial>& partials, std::uint64_t n) {
    McPartial total;
    for (const auto& p : partials) {
        total.n_gt += p.n_gt;
        total.min_sum += p.min_sum;
        total.s_xgs += p.s_xgs;
        total.x_sgx += p.x_sgx;
        total.x_xgs += p.x_xgs;
        total.min_sq += p.min_sq;
        total.min_gt += p.min_gt;
    }
    const double dn = static_cast<double>(n);
    PairQuantities q;
    q.method = Method::MonteCarlo;
    q.zeta = total.n_gt / dn;
    q.mean_min = total.min_sum / dn;
    q.e_s_given_x_gt_s = safe_div(total.s_xgs, total.n_gt);
    q.e_x_given_s_gt_x = safe_div(total.x_sgx, dn - total.n_gt);
    q.e_x_given_x_gt_s = safe_div(total.x_xgs, total.n_gt);

    // Sample variances; zeta is Bernoulli, the ratio uses the delta method
    // with the min/indicator covariance.
    const double var_z = std::max(0.0, q.zeta * (1.0 - q.zeta));
    const double var_m = std::max(0.0, total.min_sq / dn - q.mean_min * q.mean_min);
    const double cov_mz = total.min_gt / dn - q.mean_min * q.zeta;
    q.zeta_se = std::sqrt(var_z / dn);
    q.mean_min_se = std::sqrt(var_m / dn);
    if (q.zeta > 0.0) {
        const double r = q.mean_min / q.zeta;
        const double var_r = (var_m - 2.0 * r * cov_mz + r * r * var_z) / dn;
        q.delta_bar_se = std::sqrt(std::max(0.0, var_r)) / q.zeta;
    }
    return q;
}

PairQuantities mc_run(const DistributionSpec& x, const DistributionSpec& s,
                      std::uint64_t n, std::uint64_t seed, bool parallel) {
    const std::uint64_t n_chunks = (n + kMcChunk - 1) / kMcChunk;
    std::vector<McPartial> partials(n_chunks);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
            const std::uint64_t lo = static_cast<std::uint64_t>(c) * kMcChunk;
            partials[c] = mc_chunk(x, s, std::min(kMcChunk, n - lo),
                                   derive_stream(seed, static_cast<std::uint64_t>(c)));
        }
    } else {
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            const std::uint64_t lo = c * kMcChunk;
            partials[c] = mc_chunk(x, s, std::min(kMcChunk, n - lo), derive_stream(seed, c));
        }
    }
    return mc_reduce(partials, n);
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed_form";
        case Method::Quadrature: return "quadrature";
        case Method::MonteCarlo: return "monte_carlo";
    }
    return "?";
}

PairQuantities mm_pair_quantities(double beta, double delta) {
    PairQuantities q;
    q.method = Method::ClosedForm;
    const double total = beta + delta;
    q.zeta = delta / total;
    q.mean_min = 1.0 / total;  // min of independent exponentials
    q.e_s_given_x_gt_s = 1.0 / total;
    q.e_x_given_s_gt_x = 1.0 / total;
    q.e_x_given_x_gt_s = 1.0 / beta + 1.0 / total;
    return q;
}

double dm_e_s_given_x_gt_s(double beta, double delta) {
    const double u = delta / beta;  // = delta * c = 1/rho
    const double one_minus_exp = -std::expm1(-u);
    return (1.0 / delta) * (1.0 - u * std::exp(-u) / one_minus_exp);
}

PairQuantities dm_pair_quantities(double beta, double delta) {
    PairQuantities q;
    q.method = Method::ClosedForm;
    const double c = 1.0 / beta;
    q.zeta = -std::expm1(-delta * c);
    q.mean_min = q.zeta / delta;  // integral of exp(-delta t) over [0, c]
    q.e_s_given_x_gt_s = dm_e_s_given_x_gt_s(beta, delta);
    q.e_x_given_s_gt_x = c;
    q.e_x_given_x_gt_s = c;
    return q;
}

PairQuantities quadrature_pair_quantities(const DistributionSpec& x, const DistributionSpec& s,
                                          double* abs_err) {
    double err = 0.0;
    PairQuantities q;
    const bool det_x = x.law() == Law::Deterministic;
    const bool det_s = s.law() == Law::Deterministic;
    if (det_x && det_s)
        q = det_det(x.value(), s.value());
    else if (det_x)
        q = quad_det_x(x.value(), s, &err);
    else if (det_s)
        q = quad_det_s(x, s.value(), &err);
    else
        q = quad_continuous(x, s, &err);
    if (abs_err) *abs_err = err;
    return q;
}

PairQuantities pair_quantities(const DistributionSpec& x, const DistributionSpec& s,
                               const OracleConfig& config) {
    if (x.law() == Law::Exponential && s.law() == Law::Exponential)
        return mm_pair_quantities(x.rate(), s.rate());
    if (x.law() == Law::Deterministic && s.law() == Law::Exponential)
        return dm_pair_quantities(1.0 / x.value(), s.rate());

    double err = 0.0;
    PairQuantities q = quadrature_pair_quantities(x, s, &err);
    if (q.method != Method::Quadrature || err <= config.tol) return q;

    if (!config.allow_mc) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "quadrature error estimate %.3g exceeds tolerance %.3g "
                      "and the Monte Carlo fallback is disabled",
                      err, config.tol);
        throw OracleNotConverged(msg);
    }
    return mc_pair_quantities(x, s, config.mc_samples, config.mc_seed);
}

PairQuantities mc_pair_quantities(const DistributionSpec& x, const DistributionSpec& s,
                                  std::uint64_t n_samples, std::uint64_t seed) {
    return mc_run(x, s, n_samples, seed, true);
}

PairQuantities mc_pair_quantities_serial(const DistributionSpec& x, const DistributionSpec& s,
                                         std::uint64_t n_samples, std::uint64_t seed) {
    return mc_run(x, s, n_samples, seed, false);
}

}  // namespace relage::dist
