#pragma once

#include <optional>

#include "nharm/metric.hpp"

namespace nharm {

/// Logarithmic stretch of a radial profile, eta = t H'(t) / H(t), together
/// with its square. A conformal map has eta == 1.
struct Elasticity {
    double eta = 0.0;
    double zeta = 0.0;  // eta^2
};

/// Admissible range of the characteristic constant. c_min is empty for
/// n == 3, where the constant is unbounded below.
struct CharBounds {
    double c_max = 0.0;
    std::optional<double> c_min;
};

/// Characteristic constant solved from a parameter pair, annotated with its
/// admissible range.
struct CharConstant {
    double c = 0.0;
    CharBounds bounds;
    /// c >= c_min (always true for n == 3). Below this range the radial map
    /// still exists but is no longer the proven energy minimizer.
    bool within_minimal_range = true;
};

/// x^{k/2} for integer k, via the integer power when k is even and
/// exp((k/2) log x) otherwise. Requires x > 0 for odd k.
double pow_half(double x, int k);

/// Phi(zeta) = (1 - zeta) (1 + zeta/(n-1))^{(n-2)/2}, strictly decreasing
/// from Phi(0) = 1 to -inf.
double phi(double zeta, Dimension n);

/// d Phi / d zeta, always negative.
double phi_prime(double zeta, Dimension n);

/// Psi = Phi^{-1} on (-inf, 1], computed by safeguarded Newton with a
/// bisection fallback; |Phi(Psi(w)) - w| <= 1e-13 (1 + |w|).
double psi(double w, Dimension n);

/// v_c(s) = c / (s^n rho(s)). Values above 1 mean the configuration is
/// outside the existence range and raise NitscheViolation.
double v_c(double s, double c, const RadialMetric& rho, Dimension n);

/// eta(s) = sqrt(Psi(v_c(s))): the elasticity a solution must have where its
/// image passes through radius s.
Elasticity elasticity_from_radius(double s, double c, const RadialMetric& rho, Dimension n);

/// kappa_n: the root of (n-1+eta^2)^{(n-2)/2} (eta^2 - 1) = eta^n on
/// [1, sqrt((n-1)/(n-3))]. Defined for n >= 4 only; for n = 3 the constant
/// is unbounded and this throws.
double kappa(Dimension n);

/// c_max = rho(1); c_min = -rho(1) kappa_n^n for n >= 4, unbounded for n = 3.
/// Requires a regular metric (checked on [1, r_star]; for metrics with
/// unbounded domain a default probe interval is used).
CharBounds c_bounds(const RadialMetric& rho, Dimension n, double r_star = 0.0);

/// Constants c strictly below this value certify that the radial map is not
/// an energy minimizer (n >= 4). Empty for n = 3: the bound is vacuous there.
std::optional<double> nonminimality_threshold(const RadialMetric& rho, Dimension n,
                                              double r_star);

/// Coefficients of the sharp pointwise minorants of (u^2 + (n-1) v^2)^{n/2}
/// used by the energy lower bounds; equality holds exactly on the ray
/// u = sigma v.
struct MinorantCoeffs {
    double a = 0.0;
    double b = 0.0;
};

/// 0 <= sigma <= 1 branch: (u^2+(n-1)v^2)^{n/2} >= a v^n + b u v^{n-1}.
MinorantCoeffs tangent_minorant_low(double sigma, Dimension n);

/// sigma >= 1 branch: (u^2+(n-1)v^2)^{n/2} >= a u^n + b u v^{n-1}, valid
/// while a < 1; sigma must stay below the root of a(sigma) = 1 (= kappa_n).
MinorantCoeffs tangent_minorant_high(double sigma, Dimension n);

}  // namespace nharm
