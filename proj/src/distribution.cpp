#include "relage/distribution.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace relage::dist {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

/// Marsaglia-Tsang for shape >= 1; the shape < 1 case is boosted from
/// shape + 1 with a power-of-uniform correction.
double sample_gamma(RngStream& rng, double shape, double rate) {
    if (shape < 1.0) {
        const double u = rng.next_double_open();
        return sample_gamma(rng, shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.next_double_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

}  // namespace

DistributionSpec DistributionSpec::deterministic(double value) {
    require(value > 0.0 && std::isfinite(value), "deterministic: value must be positive");
    return {Law::Deterministic, value, 0.0};
}

DistributionSpec DistributionSpec::exponential(double rate) {
    require(rate > 0.0 && std::isfinite(rate), "exponential: rate must be positive");
    return {Law::Exponential, rate, 0.0};
}

DistributionSpec DistributionSpec::uniform(double low, double high) {
    require(low >= 0.0 && std::isfinite(high) && high > low,
            "uniform: need 0 <= low < high");
    return {Law::Uniform, low, high};
}

DistributionSpec DistributionSpec::gamma(double shape, double rate) {
    require(shape > 0.0 && std::isfinite(shape) && rate > 0.0 && std::isfinite(rate),
            "gamma: shape and rate must be positive");
    return {Law::Gamma, shape, rate};
}

double DistributionSpec::mean() const {
    switch (law_) {
        case Law::Deterministic: return p1_;
        case Law::Exponential: return 1.0 / p1_;
        case Law::Uniform: return 0.5 * (p1_ + p2_);
        case Law::Gamma: return p1_ / p2_;
    }
    return 0.0;
}

double DistributionSpec::second_moment() const {
    switch (law_) {
        case Law::Deterministic: return p1_ * p1_;
        case Law::Exponential: return 2.0 / (p1_ * p1_);
        case Law::Uniform: return (p1_ * p1_ + p1_ * p2_ + p2_ * p2_) / 3.0;
        case Law::Gamma: return p1_ * (p1_ + 1.0) / (p2_ * p2_);
    }
    return 0.0;
}

double DistributionSpec::pdf(double t) const {
    if (t < 0.0) return 0.0;
    switch (law_) {
        case Law::Deterministic:
            return 0.0;  // no density; callers special-case point masses
        case Law::Exponential:
            return p1_ * std::exp(-p1_ * t);
        case Law::Uniform:
            return (t >= p1_ && t <= p2_) ? 1.0 / (p2_ - p1_) : 0.0;
        case Law::Gamma: {
            if (t == 0.0) return p1_ > 1.0 ? 0.0 : (p1_ == 1.0 ? p2_ : INFINITY);
            const double log_pdf = p1_ * std::log(p2_) + (p1_ - 1.0) * std::log(t) -
                                   p2_ * t - std::lgamma(p1_);
            return std::exp(log_pdf);
        }
    }
    return 0.0;
}

double DistributionSpec::cdf(double t) const {
    if (t < 0.0) return 0.0;
    switch (law_) {
        case Law::Deterministic: return t >= p1_ ? 1.0 : 0.0;
        case Law::Exponential: return -std::expm1(-p1_ * t);
        case Law::Uniform:
            if (t <= p1_) return 0.0;
            if (t >= p2_) return 1.0;
            return (t - p1_) / (p2_ - p1_);
        case Law::Gamma: return boost::math::gamma_p(p1_, p2_ * t);
    }
    return 0.0;
}

double DistributionSpec::survival(double t) const {
    if (t < 0.0) return 1.0;
    switch (law_) {
        case Law::Deterministic: return t >= p1_ ? 0.0 : 1.0;
        case Law::Exponential: return std::exp(-p1_ * t);
        case Law::Uniform:
            if (t <= p1_) return 1.0;
            if (t >= p2_) return 0.0;
            return (p2_ - t) / (p2_ - p1_);
        case Law::Gamma: return boost::math::gamma_q(p1_, p2_ * t);
    }
    return 0.0;
}

double DistributionSpec::support_upper() const {
    switch (law_) {
        case Law::Deterministic: return p1_;
        case Law::Uniform: return p2_;
        default: return INFINITY;
    }
}

double DistributionSpec::sample(RngStream& rng) const {
    switch (law_) {
        case Law::Deterministic: return p1_;
        case Law::Exponential: return -std::log(rng.next_double_open()) / p1_;
        case Law::Uniform: return p1_ + (p2_ - p1_) * rng.next_double_open();
        case Law::Gamma: return sample_gamma(rng, p1_, p2_);
    }
    return 0.0;
}

std::string DistributionSpec::describe() const {
    std::ostringstream out;
    out.precision(9);
    switch (law_) {
        case Law::Deterministic: out << "det(" << p1_ << ")"; break;
        case Law::Exponential: out << "exp(rate=" << p1_ << ")"; break;
        case Law::Uniform: out << "unif(" << p1_ << "," << p2_ << ")"; break;
        case Law::Gamma: out << "gamma(shape=" << p1_ << ",rate=" << p2_ << ")"; break;
    }
    return out.str();
}

std::pair<double, double> moments(const DistributionSpec& spec) {
    return {spec.mean(), spec.second_moment()};
}

}  // namespace relage::dist

namespace nlohmann {

using relage::dist::DistributionSpec;
using relage::dist::Law;

void adl_serializer<DistributionSpec>::to_json(json& j, const DistributionSpec& spec) {
    switch (spec.law()) {
        case Law::Deterministic:
            j = json{{"law", "deterministic"}, {"value", spec.value()}};
            break;
        case Law::Exponential:
            j = json{{"law", "exponential"}, {"rate", spec.rate()}};
            break;
        case Law::Uniform:
            j = json{{"law", "uniform"}, {"low", spec.low()}, {"high", spec.high()}};
            break;
        case Law::Gamma:
            j = json{{"law", "gamma"}, {"shape", spec.shape()}, {"rate", spec.rate()}};
            break;
    }
}

DistributionSpec adl_serializer<DistributionSpec>::from_json(const json& j) {
    const auto law = j.at("law").get<std::string>();
    if (law == "deterministic")
        return DistributionSpec::deterministic(j.at("value").get<double>());
    if (law == "exponential")
        return DistributionSpec::exponential(j.at("rate").get<double>());
    if (law == "uniform")
        return DistributionSpec::uniform(j.at("low").get<double>(), j.at("high").get<double>());
    if (law == "gamma")
        return DistributionSpec::gamma(j.at("shape").get<double>(), j.at("rate").get<double>());
    throw std::invalid_argument("unknown law: " + law);
}

}  // namespace nlohmann
