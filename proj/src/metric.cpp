#include "nharm/metric.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace nharm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Positivity probe plus eval/deriv consistency check for custom metrics.
void validate_custom(const RadialMetric::Fn& eval, const RadialMetric::Fn& deriv,
                     double lo, double hi) {
    if (!(hi > lo))
        throw std::invalid_argument("RadialMetric: custom metric needs domain_upper > domain_lower");
    const int probes = 64;
    for (int i = 0; i <= probes; ++i) {
        const double s = lo + (hi - lo) * i / probes;
        const double v = eval(s);
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("RadialMetric: rho(s) must be positive and finite on its domain");
        const double h = 6e-6 * std::max(1.0, std::abs(s));
        if (s - h < lo || s + h > hi) continue;
        const double fd = (eval(s + h) - eval(s - h)) / (2.0 * h);
        const double dv = deriv(s);
        if (std::abs(dv - fd) > 1e-6 * (1.0 + std::abs(dv)))
            throw std::invalid_argument(
                "RadialMetric: supplied derivative disagrees with finite differences near s=" +
                std::to_string(s));
    }
}

}  // namespace

RadialMetric::RadialMetric(MetricKind kind, Fn eval, Fn deriv, double lo, double hi,
                           double param)
    : kind_(kind), eval_(std::move(eval)), deriv_(std::move(deriv)), lo_(lo), hi_(hi),
      param_(param) {}

RadialMetric RadialMetric::constant(double value) {
    if (!(value > 0.0))
        throw std::invalid_argument("RadialMetric: constant weight must be positive");
    return RadialMetric(MetricKind::Constant, [value](double) { return value; },
                        [](double) { return 0.0; }, 1.0, kInf, value);
}

RadialMetric RadialMetric::power(double exponent) {
    return RadialMetric(MetricKind::Power,
                        [exponent](double s) { return std::pow(s, exponent); },
                        [exponent](double s) { return exponent * std::pow(s, exponent - 1.0); },
                        1.0, kInf, exponent);
}

RadialMetric RadialMetric::custom(Fn eval, Fn deriv, double domain_upper, double domain_lower) {
    validate_custom(eval, deriv, domain_lower, domain_upper);
    return RadialMetric(MetricKind::Custom, std::move(eval), std::move(deriv), domain_lower,
                        domain_upper, 0.0);
}

double RadialMetric::deriv2(double s) const {
    switch (kind_) {
        case MetricKind::Constant:
            return 0.0;
        case MetricKind::Power:
            return param_ * (param_ - 1.0) * std::pow(s, param_ - 2.0);
        case MetricKind::Custom: {
            const double h = 6e-6 * std::max(1.0, std::abs(s));
            const double a = std::max(lo_, s - h);
            const double b = std::min(hi_, s + h);
            return (deriv_(b) - deriv_(a)) / (b - a);
        }
    }
    return 0.0;
}

double RadialMetric::constant_value() const {
    if (kind_ != MetricKind::Constant)
        throw std::logic_error("RadialMetric: not a constant metric");
    return param_;
}

double RadialMetric::power_exponent() const {
    if (kind_ != MetricKind::Power)
        throw std::logic_error("RadialMetric: not a power metric");
    return param_;
}

double sphere_area(int m) {
    if (m < 1) throw std::domain_error("sphere_area: m >= 1 required");
    return 2.0 * std::pow(M_PI, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

double modulus(const Annulus& a) {
    return sphere_area(a.n.value() - 1) * std::log(a.outer);
}

RegularityCertificate check_regular(const RadialMetric& rho, Dimension n, double r_star) {
    const double lo = rho.domain_lower();
    if (!(r_star > lo))
        throw std::domain_error("check_regular: r_star must exceed the domain lower bound");
    if (std::isfinite(rho.domain_upper()) && r_star > rho.domain_upper() * (1.0 + 1e-12))
        throw std::domain_error("check_regular: r_star exceeds the metric domain");

    const int grid = 4096;
    const int nn = n.value();
    RegularityCertificate cert;
    cert.product_monotone = true;

    const double p0 = rho(lo) * std::pow(lo, nn);
    const double tol = 1e-12;
    double prev = p0;
    for (int i = 0; i <= grid; ++i) {
        const double s = lo + (r_star - lo) * i / grid;
        const double rv = rho(s);
        if (!(rv > 0.0) || !std::isfinite(rv))
            throw std::domain_error("check_regular: rho must be positive and finite on [lo, r_star]");
        const double prod = rv * std::pow(s, nn);
        const double slope = s * rho.deriv(s) + nn * rv;  // (rho s^n)' / s^{n-1}
        if (prod < prev * (1.0 - tol) || slope < -1e-9 * nn * rv) cert.product_monotone = false;
        if (prod < p0 * (1.0 - tol) && !cert.violation_at) cert.violation_at = s;
        prev = prod;
    }
    cert.regular = !cert.violation_at.has_value();
    return cert;
}

RadialMetric inverted_metric(const RadialMetric& rho, Dimension n, double r_star) {
    double hi = r_star > 0.0 ? r_star : rho.domain_upper();
    if (!std::isfinite(hi) || !(hi > rho.domain_lower()))
        throw std::invalid_argument(
            "inverted_metric: pass a finite image radius for metrics with unbounded domain");
    const double q = -2.0 * n.value();
    // rho~(w) = w^q rho(1/w); the derivative follows by the chain rule.
    auto eval = [rho, q](double w) { return std::pow(w, q) * rho(1.0 / w); };
    auto deriv = [rho, q](double w) {
        return q * std::pow(w, q - 1.0) * rho(1.0 / w) -
               std::pow(w, q - 2.0) * rho.deriv(1.0 / w);
    };
    return RadialMetric::custom(std::move(eval), std::move(deriv), 1.0 / rho.domain_lower(),
                                1.0 / hi);
}

}  // namespace nharm
