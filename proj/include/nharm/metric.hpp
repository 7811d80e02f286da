#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

namespace nharm {

/// Ambient dimension. The whole theory assumes n >= 3; the planar case has
/// a different structure and is rejected here.
class Dimension {
public:
    explicit Dimension(int n) : n_(n) {
        if (n < 3) throw std::domain_error("Dimension: n >= 3 required");
    }
    int value() const noexcept { return n_; }
    bool operator==(const Dimension&) const = default;

private:
    int n_;
};

enum class MetricKind { Constant, Power, Custom };

/// Radial weight rho(s) on the image annulus together with its derivative.
/// Built-in kinds (constant value, pure power s^nu) carry exact derivatives
/// and live on [1, inf); custom metrics supply eval/deriv callbacks on an
/// explicit interval and are cross-checked against finite differences at
/// construction time. Instances are immutable and safe to share across
/// threads.
class RadialMetric {
public:
    using Fn = std::function<double(double)>;

    static RadialMetric constant(double value = 1.0);
    static RadialMetric power(double exponent);
    static RadialMetric custom(Fn eval, Fn deriv, double domain_upper,
                               double domain_lower = 1.0);

    double operator()(double s) const { return eval_(s); }
    double deriv(double s) const { return deriv_(s); }
    /// Second derivative: analytic for built-in kinds, centered finite
    /// difference of deriv() otherwise (used only by the Newton optimizer).
    double deriv2(double s) const;

    MetricKind kind() const { return kind_; }
    double domain_lower() const { return lo_; }
    double domain_upper() const { return hi_; }  // +inf for built-in kinds

    double constant_value() const;  // throws unless kind == Constant
    double power_exponent() const;  // throws unless kind == Power

private:
    RadialMetric(MetricKind kind, Fn eval, Fn deriv, double lo, double hi,
                 double param);

    MetricKind kind_;
    Fn eval_, deriv_;
    double lo_ = 1.0;
    double hi_ = 0.0;
    double param_ = 0.0;  // constant value or power exponent
};

/// Annulus A(1, R) with the inner radius normalized to 1. General A(r, R)
/// problems rescale onto this form (the energy is invariant under domain
/// homothety).
struct Annulus {
    Annulus(Dimension n_, double outer_) : n(n_), outer(outer_) {
        if (!(outer > 1.0)) throw std::domain_error("Annulus: outer radius must exceed 1");
    }
    Dimension n;
    double outer;
};

/// Area omega_m of the unit m-sphere, m >= 1.
double sphere_area(int m);

/// Conformal modulus omega_{n-1} * log R of A(1, R).
double modulus(const Annulus& a);

struct RegularityCertificate {
    bool regular = false;
    /// First grid point where rho(s) s^n drops below its value at the inner
    /// radius (empty when regular).
    std::optional<double> violation_at;
    /// Whether the stronger condition holds: s -> rho(s) s^n non-decreasing
    /// on the whole interval, not just minimized at the inner edge.
    bool product_monotone = false;
};

/// Verifies that rho(s) s^n attains its minimum at the inner radius of
/// [domain_lower, r_star], on a 4096-point grid plus a derivative sign test.
RegularityCertificate check_regular(const RadialMetric& rho, Dimension n, double r_star);

/// The weight on [1/r_star, 1] that makes the energy of the sphere-inverted
/// map w = 1/|h| equal to the energy of h: rho~(w) = w^{-2n} rho(1/w).
/// Applying it twice recovers the original weight.
RadialMetric inverted_metric(const RadialMetric& rho, Dimension n, double r_star = 0.0);

}  // namespace nharm
