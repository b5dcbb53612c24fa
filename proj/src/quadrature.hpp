#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace relage::dist::detail {

/// Adaptive 15-point Gauss-Kronrod over [a, b] (b may be +inf), split at the
/// given interior breakpoints (support edges, kinks). Accumulates the
/// per-piece absolute error estimates into *abs_err.
template <typename F>
double integrate(const F& f, double a, double b, std::vector<double> breakpoints,
                 double* abs_err) {
    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;

    breakpoints.push_back(a);
    if (std::isfinite(b)) breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    std::erase_if(breakpoints, [&](double t) { return t < a || t > b; });

    double total = 0.0;
    double err_total = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        double err = 0.0;
        total += gk::integrate(f, breakpoints[i], breakpoints[i + 1], 18, 1e-13, &err);
        err_total += err;
    }
    if (!std::isfinite(b)) {
        double err = 0.0;
        total += gk::integrate(f, breakpoints.back(), b, 18, 1e-13, &err);
        err_total += err;
    }
    if (abs_err) *abs_err += err_total;
    return total;
}

}  // namespace relage::dist::detail
