#pragma once

#include <string>
#include <utility>

#include "json.hpp"
#include "relage/rng.hpp"

namespace relage::dist {

enum class Law { Deterministic, Exponential, Uniform, Gamma };

/// Parametric description of a positive random variable with exact sampling
/// and analytic moments. Supported laws:
///
///   Deterministic(value)     point mass at value > 0
///   Exponential(rate)        rate > 0
///   Uniform(low, high)       0 <= low < high
///   Gamma(shape, rate)       shape > 0, rate > 0
///
/// Every law has support in [0, inf), strictly positive finite mean and
/// finite second moment; the factories reject anything else.
class DistributionSpec {
public:
    static DistributionSpec deterministic(double value);
    static DistributionSpec exponential(double rate);
    static DistributionSpec uniform(double low, double high);
    static DistributionSpec gamma(double shape, double rate);

    Law law() const { return law_; }

    double value() const { return p1_; }  // Deterministic
    double rate() const { return law_ == Law::Gamma ? p2_ : p1_; }
    double low() const { return p1_; }    // Uniform
    double high() const { return p2_; }   // Uniform
    double shape() const { return p1_; }  // Gamma

    double mean() const;
    double second_moment() const;

    double pdf(double t) const;
    double cdf(double t) const;       // P(T <= t)
    double survival(double t) const;  // P(T > t)

    /// Supremum of the support; +inf for Exponential and Gamma.
    double support_upper() const;

    /// One exact draw. Deterministic given the stream state.
    double sample(RngStream& rng) const;

    /// Short human-readable form, e.g. "exp(rate=1)".
    std::string describe() const;

    bool operator==(const DistributionSpec&) const = default;

private:
    DistributionSpec(Law law, double p1, double p2) : law_(law), p1_(p1), p2_(p2) {}

    Law law_;
    double p1_;
    double p2_;
};

/// (mean, second moment), both exact.
std::pair<double, double> moments(const DistributionSpec& spec);

}  // namespace relage::dist

// JSON shape: {"law": "exponential", "rate": 1.0} with keys law, value,
// rate, low, high, shape depending on the law.
namespace nlohmann {
template <>
struct adl_serializer<relage::dist::DistributionSpec> {
    static relage::dist::DistributionSpec from_json(const json& j);
    static void to_json(json& j, const relage::dist::DistributionSpec& spec);
};
}  // namespace nlohmann
