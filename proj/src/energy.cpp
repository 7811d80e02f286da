#include "nharm/energy.hpp"

#include <cmath>

#include "nharm/errors.hpp"
#include "nharm/quadrature.hpp"

namespace nharm {

namespace {

constexpr double kRelTol = 1e-9;

double energy_integral(const ProfileFn& H, const ProfileFn& H_dot, double R,
                       const RadialMetric& rho, Dimension n, double* err = nullptr) {
    const int nn = n.value();
    auto L = [&](double t)  {
        const double h = H(t);
        const double hd = H_dot(t);
        const double q = hd * hd + (nn - 1) * h * h / (t * t);
        return rho(h) * pow_half(t * t, nn - 2) * t * pow_half(q, nn);
    };
    const auto r = quad::integrate(L, 1.0, R, 0.0, kRelTol);
    if (!std::isfinite(r.value))
        throw QuadratureError("radial energy quadrature failed", r.value, r.error);
    const double w = sphere_area(nn - 1);
    if (err) *err = w * r.error;
    return w * r.value;
}

}  // namespace

double radial_energy(const ProfileFn& H, const ProfileFn& H_dot, double R,
                     const RadialMetric& rho, Dimension n) {
    for (int i = 0; i <= 32; ++i) {
        const double t = 1.0 + (R - 1.0) * i / 32.0;
        if (!(H_dot(t) >= 0.0))
            throw std::domain_error("radial_energy: profile must be non-decreasing");
    }
    return energy_integral(H, H_dot, R, rho, n);
}

double radial_energy(const RadialSolution& sol) {
    return energy_integral([&](double t) { return sol.eval(t); },
                           [&](double t) { return sol.deriv(t); }, sol.R(), sol.metric(),
                           sol.n());
}

double minimizer_energy(const RadialSolution& sol) {
    const int nn = sol.n().value();
    const auto& rho = sol.metric();
    auto g = [&](double x) {  // x = log t
        const double t = std::exp(x);
        const double h = sol.eval(t);
        const double eta = sol.elasticity(t).eta;
        return rho(h) * pow_half(h * h, nn) * pow_half(eta * eta + nn - 1.0, nn);
    };
    const auto r = quad::integrate(g, 0.0, std::log(sol.R()), 0.0, kRelTol);
    if (!std::isfinite(r.value))
        throw QuadratureError("minimizer energy quadrature failed", r.value, r.error);
    return sphere_area(nn - 1) * r.value;
}

EnergyReport lower_bound(double c, double R, double r_star, const RadialMetric& rho,
                         Dimension n) {
    const int nn = n.value();
    const double w = sphere_area(nn - 1);
    const double mod_domain = w * std::log(R);

    EnergyReport rep;
    rep.branch = c >= 0.0 ? BoundBranch::NonNegativeC : BoundBranch::NonPositiveC;

    // boundary weight: rho(tau) b(eta(tau)) with the minorant coefficient of
    // the matching branch, eta solved from the characteristic relation
    auto eta_at = [&](double tau) { return elasticity_from_radius(tau, c, rho, n).eta; };
    std::function<double(double)> integrand;
    if (c >= 0.0) {
        rep.modulus_term = pow_half(nn - 1.0, nn) * c * mod_domain;
        integrand = [&, nn](double tau) {
            const double eta = eta_at(tau);
            return pow_half(tau * tau, nn - 1) * nn * rho(tau) * eta *
                   pow_half(eta * eta + nn - 1.0, nn - 2);
        };
    } else {
        rep.modulus_term = -c * pow_half(nn - 1.0, nn - 2) * mod_domain;
        integrand = [&, nn](double tau) {
            const double eta = eta_at(tau);
            return pow_half(tau * tau, nn - 1) * nn * rho(tau) *
                   pow_half(eta * eta + nn - 1.0, nn - 2) / eta;
        };
    }
    const auto r = quad::integrate(integrand, 1.0, r_star, 0.0, kRelTol);
    if (!std::isfinite(r.value))
        throw QuadratureError("lower bound quadrature failed", r.value, r.error);
    rep.boundary_term = w * r.value;
    rep.lower_bound = rep.modulus_term + rep.boundary_term;
    rep.total = rep.lower_bound;
    rep.quad_err = w * r.error;
    return rep;
}

EnergyReport energy_report(const RadialSolution& sol) {
    EnergyReport rep = lower_bound(sol.c(), sol.R(), sol.R_star(), sol.metric(), sol.n());
    rep.total = minimizer_energy(sol);
    return rep;
}

FreeLagrangians free_lagrangians_radial(const RadialSolution& sol,
                                        const std::optional<ProfileFn>& weight) {
    const int nn = sol.n().value();
    const double w = sphere_area(nn - 1);
    const double c = sol.c();
    const auto& rho = sol.metric();

    ProfileFn wgt;
    if (weight) {
        wgt = *weight;
    } else if (c >= 0.0) {
        wgt = [&rho, &sol, nn](double tau) {
            const double eta = elasticity_from_radius(tau, sol.c(), rho, sol.n()).eta;
            return nn * rho(tau) * eta * pow_half(eta * eta + nn - 1.0, nn - 2);
        };
    } else {
        wgt = [&rho, &sol, nn](double tau) {
            const double eta = elasticity_from_radius(tau, sol.c(), rho, sol.n()).eta;
            return nn * rho(tau) * pow_half(eta * eta + nn - 1.0, nn - 2) / eta;
        };
    }

    FreeLagrangians out;
    const double R = sol.R();

    auto weighted = [&](double t) {
        const double h = sol.eval(t);
        return wgt(h) * sol.deriv(t) * pow_half(h * h, nn - 1);
    };
    out.weighted = w * quad::integrate(weighted, 1.0, R, 0.0, kRelTol).value;
    auto weighted_ref = [&](double tau) { return wgt(tau) * pow_half(tau * tau, nn - 1); };
    out.weighted_ref = w * quad::integrate(weighted_ref, 1.0, sol.R_star(), 0.0, kRelTol).value;

    auto normal = [&](double t) { return sol.deriv(t) / sol.eval(t); };
    out.normal = w * quad::integrate(normal, 1.0, R, 0.0, kRelTol).value;
    out.normal_ref = w * std::log(sol.R_star());

    out.tangential = w * quad::integrate([](double t) { return 1.0 / t; }, 1.0, R, 0.0, kRelTol).value;
    out.tangential_ref = w * std::log(R);
    return out;
}

double radial_inner_distortion(double F, double F_dot, double s, Dimension n) {
    if (!(F_dot > 0.0))
        throw std::domain_error("radial_inner_distortion: degenerate Jacobian (F' <= 0)");
    const int nn = n.value();
    const double tang = F / s;
    const double adj2 = pow_half(tang * tang, nn - 1) +
                        (nn - 1) * F_dot * F_dot * pow_half(tang * tang, nn - 2);
    const double jac = F_dot * pow_half(tang * tang, nn - 1);  // F' (F/s)^{n-1}
    return pow_half(adj2, nn) / (pow_half(nn, nn) * pow_half(jac * jac, nn - 1));
}

double distortion_energy(const RadialSolution& sol) {
    const int nn = sol.n().value();
    const auto& rho = sol.metric();
    auto g = [&](double s) {
        const double F = sol.inverse_eval(s);
        const double Fd = sol.inverse_deriv(s);
        return rho(s) * radial_inner_distortion(F, Fd, s, sol.n()) * pow_half(s * s, nn - 1);
    };
    const auto r = quad::integrate(g, 1.0, sol.R_star(), 0.0, kRelTol);
    return pow_half(nn, nn) * sphere_area(nn - 1) * r.value;
}

EnergyPair inversion_energy_check(const RadialSolution& sol) {
    EnergyPair out;
    out.original = radial_energy(sol);
    const RadialMetric inv = inverted_metric(sol.metric(), sol.n(), sol.R_star());
    out.inverted = energy_integral(
        [&](double t) { return 1.0 / sol.eval(t); },
        [&](double t) {
            const double h = sol.eval(t);
            return -sol.deriv(t) / (h * h);
        },
        sol.R(), inv, sol.n());
    return out;
}

}  // namespace nharm
