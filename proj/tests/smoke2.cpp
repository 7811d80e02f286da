// Second development smoke: critical case, oracles, timings.
#include <chrono>
#include <cmath>
#include <cstdio>

#include "nharm/energy.hpp"
#include "nharm/solver.hpp"
#include "nharm/spherical.hpp"
#include "nharm/variational.hpp"

using namespace nharm;
using clk = std::chrono::steady_clock;

static double ms_since(clk::time_point t0) {
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

// RK4 for d log t / d log H = 1 / eta(H) over log H in [0, log r_star].
static double oracle_log_R(double c, const RadialMetric& rho, Dimension n, double r_star,
                           int steps) {
    auto f = [&](double x) {
        const double H = std::exp(x);
        return 1.0 / elasticity_from_radius(H, c, rho, n).eta;
    };
    const double X = std::log(r_star);
    const double h = X / steps;
    double acc = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double x = i * h;
        const double k1 = f(x), k2 = f(x + 0.5 * h), k4 = f(x + h);
        acc += h / 6.0 * (k1 + 4.0 * k2 + k4);  // f depends only on x here
    }
    return acc;
}

int main() {
    Dimension n3(3), n4(4);
    auto rho1 = RadialMetric::constant();

    // elasticity directions
    {
        auto cpos = solve_profile(0.5, 2.0, rho1, n3, 256);
        auto cneg = solve_profile(-5.0, 2.0, rho1, n3, 256);
        std::printf("c=+0.5: eta(1)=%.6f eta(R)=%.6f (expect increasing, <=1)\n",
                    cpos.elasticity(1.0).eta, cpos.elasticity(cpos.R()).eta);
        std::printf("c=-5 : eta(1)=%.6f eta(R)=%.6f (expect decreasing, >=1)\n",
                    cneg.elasticity(1.0).eta, cneg.elasticity(cneg.R()).eta);
    }

    // outer_radius vs RK4 oracle
    {
        const double R = outer_radius(-5.0, 2.0, rho1, n3);
        const double Ro = std::exp(oracle_log_R(-5.0, rho1, n3, 2.0, 20000));
        std::printf("outer_radius c=-5: %.12e oracle %.12e rel %.2e\n", R, Ro,
                    std::abs(R - Ro) / Ro);
    }

    // critical profile (c = c_max = 1, rho = 1)
    {
        auto crit = solve_profile(1.0, 2.0, rho1, n3, 512);
        std::printf("critical: R=%.12g eta(1)=%.3g eta(R)=%.6f slope_mismatch=%.2e\n", crit.R(),
                    crit.elasticity(1.0).eta, crit.elasticity(crit.R()).eta,
                    crit.diagnostics().slope_mismatch);
        double fi = 0.0;
        for (int i = 1; i < 200; ++i) {
            const double t = std::exp(std::log(crit.R()) * i / 200.0);
            fi = std::max(fi, std::abs(first_integral(crit, t) - 1.0));
        }
        std::printf("critical first-integral dev: %.2e\n", fi);
        std::printf("nitsche_bound(R=%.12g) = %.12g (should equal R_*=2)\n", crit.R(),
                    nitsche_bound(crit.R(), rho1, n3));
        const double E = radial_energy(crit);
        const double M = minimizer_energy(crit);
        std::printf("critical energies: radial=%.10g minimizer=%.10g rel=%.2e\n", E, M,
                    std::abs(E - M) / E);
        auto rep = energy_report(crit);
        std::printf("critical bound rel gap: %.2e\n",
                    std::abs(rep.total - rep.lower_bound) / rep.total);
    }

    // psi extremes
    for (int nn : {3, 4, 5}) {
        Dimension n(nn);
        const double z = psi(-50.0, n);
        std::printf("psi(-50, n=%d) = %.12g residual %.2e\n", nn, z,
                    std::abs(phi(z, n) + 50.0));
    }

    // sweep timing at 64 steps
    {
        auto sol4 = solve_profile(-100.0, 2.0, rho1, n4, 1024);
        auto t0 = clk::now();
        auto sweep = nonminimality_certificate(sol4, 1.5, 64);
        std::printf("certificate 64 steps: %.0f ms, nonminimal=%d witness=%.4f\n",
                    ms_since(t0), int(sweep.nonminimal), sweep.witness.value_or(-1.0));
        bool eta_ok = sweep.eta_above_threshold.value_or(false);
        std::printf("eta bound check: %d ; below_threshold=%d\n", int(eta_ok),
                    int(sweep.below_threshold));
    }

    // minimize_profile timing at m=2048 vs reference
    {
        auto t0 = clk::now();
        auto direct = minimize_profile(2.0, 3.0, rho1, n3, 2048, 1e-10);
        const double dt = ms_since(t0);
        auto cc = solve_c(2.0, 3.0, rho1, n3);
        auto ref = solve_profile(cc.c, 3.0, rho1, n3, 2048);
        double sup = 0.0;
        for (std::size_t i = 0; i < direct.t.size(); ++i)
            sup = std::max(sup,
                           std::abs(direct.H[i] - ref.eval(std::min(direct.t[i], ref.R()))));
        std::printf("minimize m=2048: %.0f ms, sup=%.3e\n", dt, sup);
        auto d2 = minimize_profile(2.0, 3.0, rho1, n3, 1024, 1e-10);
        double sup2 = 0.0;
        for (std::size_t i = 0; i < d2.t.size(); ++i)
            sup2 = std::max(sup2, std::abs(d2.H[i] - ref.eval(std::min(d2.t[i], ref.R()))));
        std::printf("minimize m=1024: sup=%.3e ratio=%.2f (expect ~4)\n", sup2, sup2 / sup);
    }

    // elasticity ODE residual
    {
        auto rho_nu = RadialMetric::power(1.0);
        auto sol = solve_profile(-2.0, 2.0, rho_nu, n4, 1024);
        auto res = elasticity_ode_residual(sol, 1.0);
        double mx = 0.0;
        for (double r : res) mx = std::max(mx, std::abs(r));
        std::printf("elasticity ODE residual (nu=1, n=4, c=-2): %.2e\n", mx);
    }

    // image radius round trip
    {
        const double R = outer_radius(-3.0, 2.5, rho1, n4);
        const double rs = image_radius(-3.0, R, rho1, n4);
        std::printf("image_radius round trip: %.12g (expect 2.5)\n", rs);
    }
    return 0;
}
