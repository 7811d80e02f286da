#include "nharm/characteristic.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nharm/errors.hpp"

namespace nharm {

namespace {

double ipow(double x, int k) {
    if (k < 0) return 1.0 / ipow(x, -k);
    double r = 1.0;
    while (k) {
        if (k & 1) r *= x;
        x *= x;
        k >>= 1;
    }
    return r;
}

}  // namespace

double pow_half(double x, int k) {
    if (k == 0) return 1.0;
    if (k % 2 == 0) return ipow(x, k / 2);
    if (!(x > 0.0)) throw std::domain_error("pow_half: x > 0 required for odd k");
    return std::exp(0.5 * k * std::log(x));
}

double phi(double zeta, Dimension n) {
    if (zeta < 0.0) throw std::domain_error("phi: zeta >= 0 required");
    const int nn = n.value();
    return (1.0 - zeta) * pow_half(1.0 + zeta / (nn - 1), nn - 2);
}

double phi_prime(double zeta, Dimension n) {
    if (zeta < 0.0) throw std::domain_error("phi_prime: zeta >= 0 required");
    const int nn = n.value();
    return -0.5 * nn * (1.0 + zeta) * pow_half(nn - 1.0, 2 - nn) *
           pow_half(nn - 1.0 + zeta, nn - 4);
}

double psi(double w, Dimension n) {
    if (w > 1.0) {
        if (w <= 1.0 + 1e-10) return 0.0;  // roundoff at the critical value
        throw std::domain_error("psi: w <= 1 required");
    }
    if (w == 1.0) return 0.0;

    // bracket [lo, hi] with Phi(lo) >= w >= Phi(hi)
    double lo = 0.0, hi = 1.0;
    while (phi(hi, n) > w) {
        lo = hi;
        hi *= 2.0;
    }
    const double tol = 1e-13 * (1.0 + std::abs(w));
    double z = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = phi(z, n) - w;
        if (std::abs(f) <= tol) return z;
        if (f > 0.0)
            lo = z;  // Phi decreasing: root to the right
        else
            hi = z;
        const double step = f / phi_prime(z, n);
        double znext = z - step;
        if (!(znext > lo) || !(znext < hi)) znext = 0.5 * (lo + hi);
        if (hi - lo < 1e-16 * (1.0 + hi)) return 0.5 * (lo + hi);
        z = znext;
    }
    return z;
}

double v_c(double s, double c, const RadialMetric& rho, Dimension n) {
    const double v = c / (ipow(s, n.value()) * rho(s));
    if (v > 1.0 + 1e-10)
        throw NitscheViolation("v_c(s) > 1 at s=" + std::to_string(s) +
                               ": constant c exceeds the existence range");
    return std::min(v, 1.0);
}

Elasticity elasticity_from_radius(double s, double c, const RadialMetric& rho, Dimension n) {
    const double zeta = psi(v_c(s, c, rho, n), n);
    return Elasticity{std::sqrt(zeta), zeta};
}

namespace {

// residual of the kappa equation and its derivative in eta
double kappa_fn(double eta, int n) {
    const double z = eta * eta;
    return pow_half(n - 1.0 + z, n - 2) * (z - 1.0) - ipow(eta, n);
}

double kappa_fn_prime(double eta, int n) {
    const double z = eta * eta;
    return (n - 2.0) * eta * pow_half(n - 1.0 + z, n - 4) * (z - 1.0) +
           2.0 * eta * pow_half(n - 1.0 + z, n - 2) - n * ipow(eta, n - 1);
}

}  // namespace

double kappa(Dimension n) {
    const int nn = n.value();
    if (nn == 3)
        throw std::domain_error("kappa: unbounded for n = 3 (no finite root exists)");
    double lo = 1.0;
    double hi = std::sqrt((nn - 1.0) / (nn - 3.0));
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (kappa_fn(mid, nn) < 0.0 ? lo : hi) = mid;
    }
    double k = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it)  // Newton polish to machine precision
        k -= kappa_fn(k, nn) / kappa_fn_prime(k, nn);
    return k;
}

CharBounds c_bounds(const RadialMetric& rho, Dimension n, double r_star) {
    double probe = r_star > 0.0 ? r_star : rho.domain_upper();
    if (!std::isfinite(probe)) probe = 16.0;  // regularity of built-ins is radius-independent
    const auto cert = check_regular(rho, n, probe);
    if (!cert.regular)
        throw std::invalid_argument("c_bounds: metric is not regular (rho(s)s^n dips below its inner value near s=" +
                                    std::to_string(*cert.violation_at) + ")");
    CharBounds b;
    b.c_max = rho(rho.domain_lower());
    if (n.value() >= 4) b.c_min = -b.c_max * ipow(kappa(n), n.value());
    return b;
}

std::optional<double> nonminimality_threshold(const RadialMetric& rho, Dimension n,
                                              double r_star) {
    const int nn = n.value();
    if (nn == 3) return std::nullopt;
    const double lead = 2.0 * rho(r_star) * ipow(r_star, nn) / (nn - 2.0);
    return -lead * pow_half((nn - 2.0) / (nn - 3.0), nn);
}

MinorantCoeffs tangent_minorant_low(double sigma, Dimension n) {
    if (sigma < 0.0 || sigma > 1.0)
        throw std::domain_error("tangent_minorant_low: sigma in [0, 1] required");
    const int nn = n.value();
    const double base = pow_half(sigma * sigma + nn - 1.0, nn - 2);
    return MinorantCoeffs{(nn - 1.0) * base * (1.0 - sigma * sigma), nn * sigma * base};
}

MinorantCoeffs tangent_minorant_high(double sigma, Dimension n) {
    if (sigma < 1.0) throw std::domain_error("tangent_minorant_high: sigma >= 1 required");
    const int nn = n.value();
    const double base = pow_half(sigma * sigma + nn - 1.0, nn - 2);
    const double a = base * (sigma * sigma - 1.0) / ipow(sigma, nn);
    if (a >= 1.0)
        throw std::range_error("tangent_minorant_high: sigma beyond the valid range (a(sigma) >= 1)");
    return MinorantCoeffs{a, nn * base / sigma};
}

}  // namespace nharm
