#include "nharm/spherical.hpp"

#include <algorithm>
#include <cmath>

#include "nharm/energy.hpp"
#include "nharm/errors.hpp"
#include "nharm/quadrature.hpp"

namespace nharm {

namespace {

void check_meridian_args(double theta, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("spherical homothety: lambda > 0 required");
    if (theta < -1e-12 || theta > M_PI + 1e-12)
        throw std::domain_error("spherical homothety: theta in [0, pi] required");
}

}  // namespace

double meridian_map(double theta, double lambda) {
    check_meridian_args(theta, lambda);
    theta = std::clamp(theta, 0.0, M_PI);
    // atan2 form is stable at both poles
    return 2.0 * std::atan2(lambda * std::sin(0.5 * theta), std::cos(0.5 * theta));
}

double conformal_factor(double theta, double lambda) {
    check_meridian_args(theta, lambda);
    theta = std::clamp(theta, 0.0, M_PI);
    return 2.0 * lambda / (1.0 + lambda * lambda + (1.0 - lambda * lambda) * std::cos(theta));
}

std::vector<double> apply_homothety(std::span<const double> zeta, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("apply_homothety: lambda > 0 required");
    const std::size_t n = zeta.size();
    if (n < 2) throw std::domain_error("apply_homothety: need a vector in R^n, n >= 2");
    double norm2 = 0.0;
    for (double v : zeta) norm2 += v * v;
    if (std::abs(norm2 - 1.0) > 1e-6)
        throw std::domain_error("apply_homothety: input must be a unit vector");

    const double zn = zeta[n - 1];
    double perp = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) perp += zeta[i] * zeta[i];
    perp = std::sqrt(perp);

    std::vector<double> out(zeta.begin(), zeta.end());
    if (perp < 1e-15) return out;  // a pole: fixed point

    const double theta = std::atan2(perp, zn);
    const double ph = meridian_map(theta, lambda);
    const double sin_ph = std::sin(ph);
    for (std::size_t i = 0; i + 1 < n; ++i) out[i] = zeta[i] / perp * sin_ph;
    out[n - 1] = std::cos(ph);
    return out;
}

double phi_energy(double lambda, double sigma, Dimension n, double rel_tol) {
    if (!(lambda > 0.0)) throw std::domain_error("phi_energy: lambda > 0 required");
    if (sigma < 0.0) throw std::domain_error("phi_energy: sigma >= 0 required");
    const int nn = n.value();
    auto integrand = [=](double th) {
        const double cf = conformal_factor(th, lambda);
        return pow_half(sigma * sigma + (nn - 1) * cf * cf, nn) *
               pow_half(std::sin(th) * std::sin(th), nn - 2);
    };
    const auto r = quad::integrate(integrand, 0.0, M_PI, 0.0, rel_tol);
    if (!std::isfinite(r.value))
        throw QuadratureError("phi_energy quadrature failed", r.value, r.error);
    return sphere_area(nn - 2) / sphere_area(nn - 1) * r.value;
}

double phi_second_derivative(double sigma, Dimension n) {
    if (sigma < 0.0) throw std::domain_error("phi_second_derivative: sigma >= 0 required");
    const int nn = n.value();
    const double S = sigma * sigma + nn - 1.0;
    return (nn - 1.0) * pow_half(S, nn - 4) * ((nn - 1.0) - (nn - 3.0) * sigma * sigma);
}

double perturbed_energy(const RadialSolution& sol, double lambda, double* err_estimate) {
    if (!(lambda > 0.0)) throw std::domain_error("perturbed_energy: lambda > 0 required");
    const int nn = sol.n().value();
    const auto& rho = sol.metric();
    const double inner_tol = 1e-10;
    auto g = [&](double x) {  // x = log t
        const double t = std::exp(x);
        const double h = sol.eval(t);
        const double eta = sol.elasticity(t).eta;
        return rho(h) * pow_half(h * h, nn) * phi_energy(lambda, eta, sol.n(), inner_tol);
    };
    const auto r = quad::integrate(g, 0.0, std::log(sol.R()), 0.0, 1e-9);
    if (!std::isfinite(r.value))
        throw QuadratureError("perturbed_energy quadrature failed", r.value, r.error);
    const double w = sphere_area(nn - 1);
    const double value = w * r.value;
    if (err_estimate) *err_estimate = w * r.error + inner_tol * std::abs(value);
    return value;
}

HomothetySweep nonminimality_certificate(const RadialSolution& sol, double lambda_max,
                                         int steps) {
    if (!(lambda_max > 1.0))
        throw std::domain_error("nonminimality_certificate: lambda_max > 1 required");
    if (steps < 1) throw std::domain_error("nonminimality_certificate: steps >= 1 required");

    HomothetySweep sweep;
    double base_err = 0.0;
    sweep.baseline = minimizer_energy(sol);
    base_err = 1e-9 * std::abs(sweep.baseline);

    const int nn = sol.n().value();
    sweep.within_minimal_range = sol.within_minimal_range();
    if (const auto thr = nonminimality_threshold(sol.metric(), sol.n(), sol.R_star()))
        sweep.below_threshold = sol.c() < *thr;

    if (nn >= 4) {
        const double bar = std::sqrt((nn - 1.0) / (nn - 3.0));
        bool above = true;
        for (double e : sol.grid_eta()) above = above && e > bar;
        sweep.eta_above_threshold = above;
    }

    sweep.lambdas.resize(steps);
    sweep.energies.resize(steps);
    double worst_err = base_err;
    double best_deficit = 0.0;
    for (int k = 1; k <= steps; ++k) {
        const double lam = std::exp(std::log(lambda_max) * k / steps);
        double err = 0.0;
        const double e = perturbed_energy(sol, lam, &err);
        sweep.lambdas[k - 1] = lam;
        sweep.energies[k - 1] = e;
        worst_err = std::max(worst_err, err + base_err);
        const double deficit = sweep.baseline - e;
        if (deficit > best_deficit) {
            best_deficit = deficit;
            sweep.witness = lam;
        }
    }
    sweep.quad_error = worst_err;
    sweep.nonminimal = best_deficit > 10.0 * worst_err;
    if (!sweep.nonminimal) sweep.witness.reset();
    return sweep;
}

}  // namespace nharm
