#include "nharm/variational.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nharm/errors.hpp"

namespace nharm {

namespace {

// Per-cell midpoint-rule energy density f(K, Hm) = rho(Hm) Q^{n/2} with
// Q = K^2 + (n-1) Hm^2 / tm^2, and its partial derivatives.
struct CellTerms {
    double f, f_K, f_H, f_KK, f_KH, f_HH;
};

CellTerms cell_terms(double K, double Hm, double tm, const RadialMetric& rho, int n,
                     bool second_order) {
    CellTerms ct{};
    const double tm2 = tm * tm;
    const double Q = K * K + (n - 1) * Hm * Hm / tm2;
    const double Qh2 = pow_half(Q, n - 2);
    const double Qn = pow_half(Q, n);
    const double r = rho(Hm);
    const double rp = rho.deriv(Hm);
    const double QH = 2.0 * (n - 1) * Hm / tm2;

    ct.f = r * Qn;
    ct.f_K = r * n * K * Qh2;
    ct.f_H = rp * Qn + 0.5 * r * n * Qh2 * QH;
    if (second_order) {
        const double Qh4 = pow_half(Q, n - 4);
        const double rpp = rho.deriv2(Hm);
        ct.f_KK = r * n * (Qh2 + (n - 2) * K * K * Qh4);
        ct.f_KH = rp * n * K * Qh2 + 0.5 * r * n * (n - 2) * K * Qh4 * QH;
        ct.f_HH = rpp * Qn + rp * n * Qh2 * QH + 0.25 * r * n * (n - 2) * Qh4 * QH * QH +
                  r * n * (n - 1) / tm2 * Qh2;
    }
    return ct;
}

void require_monotone(const DiscreteProfile& p) {
    if (p.t.size() < 2 || p.t.size() != p.H.size())
        throw std::invalid_argument("DiscreteProfile: need matching t/H samples");
    for (std::size_t i = 1; i < p.t.size(); ++i) {
        if (!(p.t[i] > p.t[i - 1]))
            throw std::domain_error("DiscreteProfile: grid must be strictly increasing");
        if (!(p.H[i] >= p.H[i - 1]))
            throw std::domain_error("DiscreteProfile: profile must be non-decreasing");
    }
}

// Tridiagonal solve (Thomas); returns false on a breakdown.
bool thomas(std::vector<double> diag, std::vector<double> off, std::vector<double> rhs,
            std::vector<double>& x) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0 || !std::isfinite(diag[i - 1])) return false;
        const double w = off[i - 1] / diag[i - 1];
        diag[i] -= w * off[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0 || !std::isfinite(diag[n - 1])) return false;
    x.resize(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - off[i] * x[i + 1]) / diag[i];
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

DiscreteProfile geometric_profile(double R, double r_star, int m) {
    if (!(R > 1.0) || !(r_star > 1.0))
        throw std::domain_error("geometric_profile: R and r_star must exceed 1");
    if (m < 2) throw std::domain_error("geometric_profile: m >= 2 required");
    DiscreteProfile p;
    p.t.resize(m + 1);
    p.H.resize(m + 1);
    for (int i = 0; i <= m; ++i) {
        p.t[i] = std::exp(std::log(R) * i / m);
        p.H[i] = std::exp(std::log(r_star) * i / m);
    }
    p.t[m] = R;
    p.H[m] = r_star;
    return p;
}

double discrete_energy(const DiscreteProfile& p, const RadialMetric& rho, Dimension n) {
    require_monotone(p);
    const int nn = n.value();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < p.t.size(); ++i) {
        const double dt = p.t[i + 1] - p.t[i];
        const double tm = 0.5 * (p.t[i] + p.t[i + 1]);
        const double Hm = 0.5 * (p.H[i] + p.H[i + 1]);
        const double K = (p.H[i + 1] - p.H[i]) / dt;
        sum += cell_terms(K, Hm, tm, rho, nn, false).f * pow_half(tm * tm, nn - 1) * dt;
    }
    return sphere_area(nn - 1) * sum;
}

std::vector<double> discrete_energy_gradient(const DiscreteProfile& p, const RadialMetric& rho,
                                             Dimension n) {
    require_monotone(p);
    const int nn = n.value();
    const std::size_t m = p.t.size() - 1;
    const double w = sphere_area(nn - 1);
    std::vector<double> g(m - 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double dt = p.t[i + 1] - p.t[i];
        const double tm = 0.5 * (p.t[i] + p.t[i + 1]);
        const double Hm = 0.5 * (p.H[i] + p.H[i + 1]);
        const double K = (p.H[i + 1] - p.H[i]) / dt;
        const auto ct = cell_terms(K, Hm, tm, rho, nn, false);
        const double W = w * pow_half(tm * tm, nn - 1) * dt;
        const double gi = W * (-ct.f_K / dt + 0.5 * ct.f_H);
        const double gj = W * (ct.f_K / dt + 0.5 * ct.f_H);
        if (i >= 1) g[i - 1] += gi;
        if (i + 1 <= m - 1) g[i] += gj;
    }
    return g;
}

DiscreteProfile minimize_profile(double R, double r_star, const RadialMetric& rho, Dimension n,
                                 int m, double tol, std::vector<OptimizerStep>* trace) {
    const auto cert = check_regular(rho, n, r_star);
    if (!cert.regular)
        throw std::invalid_argument("minimize_profile: metric is not regular on [1, r_star]");
    DiscreteProfile p = geometric_profile(R, r_star, m);
    const int nn = n.value();
    const double w = sphere_area(nn - 1);
    const std::size_t ni = m - 1;  // interior nodes

    std::vector<double> u(ni);
    for (std::size_t i = 0; i < ni; ++i) u[i] = std::log(p.H[i + 1]);

    auto fill_profile = [&](const std::vector<double>& uu, DiscreteProfile& q) {
        for (std::size_t i = 0; i < ni; ++i) q.H[i + 1] = std::exp(uu[i]);
    };
    auto monotone = [&](const DiscreteProfile& q) {
        for (std::size_t i = 1; i < q.H.size(); ++i)
            if (!(q.H[i] > q.H[i - 1])) return false;
        return true;
    };

    double energy = discrete_energy(p, rho, n);
    std::vector<double> gH(ni), gu(ni), diag(ni), off(ni > 0 ? ni - 1 : 0), step;
    for (int iter = 0; iter < 200; ++iter) {
        // assemble gradient and tridiagonal Hessian in H, then map to u = log H
        std::fill(gH.begin(), gH.end(), 0.0);
        std::fill(diag.begin(), diag.end(), 0.0);
        std::fill(off.begin(), off.end(), 0.0);
        for (int i = 0; i < m; ++i) {
            const double dt = p.t[i + 1] - p.t[i];
            const double tm = 0.5 * (p.t[i] + p.t[i + 1]);
            const double Hm = 0.5 * (p.H[i] + p.H[i + 1]);
            const double K = (p.H[i + 1] - p.H[i]) / dt;
            const auto ct = cell_terms(K, Hm, tm, rho, nn, true);
            const double W = w * pow_half(tm * tm, nn - 1) * dt;
            const double gi = W * (-ct.f_K / dt + 0.5 * ct.f_H);
            const double gj = W * (ct.f_K / dt + 0.5 * ct.f_H);
            const double hii = W * (ct.f_KK / (dt * dt) - ct.f_KH / dt + 0.25 * ct.f_HH);
            const double hjj = W * (ct.f_KK / (dt * dt) + ct.f_KH / dt + 0.25 * ct.f_HH);
            const double hij = W * (-ct.f_KK / (dt * dt) + 0.25 * ct.f_HH);
            if (i >= 1) {
                gH[i - 1] += gi;
                diag[i - 1] += hii;
            }
            if (i + 1 <= m - 1) {
                gH[i] += gj;
                diag[i] += hjj;
            }
            if (i >= 1 && i + 1 <= m - 1) off[i - 1] += hij;
        }
        double gmax = 0.0;
        for (std::size_t i = 0; i < ni; ++i) {
            const double Hi = p.H[i + 1];
            gu[i] = Hi * gH[i];
            gmax = std::max(gmax, std::abs(gu[i]));
        }
        if (trace) trace->push_back({iter, energy, gmax});
        if (gmax <= tol * (1.0 + std::abs(energy))) return p;

        // Hessian in u: H_u = D H_H D + diag(H_i g_i), D = diag(H_i)
        std::vector<double> du(ni), ou(ni > 0 ? ni - 1 : 0);
        double dscale = 0.0;
        for (std::size_t i = 0; i < ni; ++i) {
            const double Hi = p.H[i + 1];
            du[i] = Hi * Hi * diag[i] + Hi * gH[i];
            dscale = std::max(dscale, std::abs(du[i]));
        }
        for (std::size_t i = 0; i + 1 < ni; ++i) ou[i] = p.H[i + 1] * p.H[i + 2] * off[i];

        // damped Newton direction with Levenberg escalation
        double mu = 0.0;
        bool ok = false;
        for (int tries = 0; tries < 40 && !ok; ++tries) {
            std::vector<double> dd = du;
            for (auto& v : dd) v += mu;
            std::vector<double> rhs(ni);
            for (std::size_t i = 0; i < ni; ++i) rhs[i] = -gu[i];
            ok = thomas(dd, ou, rhs, step);
            if (ok) {
                double descent = 0.0;
                for (std::size_t i = 0; i < ni; ++i) descent += step[i] * gu[i];
                ok = descent < 0.0;
            }
            if (!ok) mu = mu == 0.0 ? 1e-8 * std::max(dscale, 1.0) : 10.0 * mu;
        }
        if (!ok)
            throw std::runtime_error(
                "minimize_profile: could not produce a descent direction (grad max-norm " +
                std::to_string(gmax) + ")");

        // backtrack until the iterate stays monotone and the energy does not rise
        DiscreteProfile q = p;
        std::vector<double> ucand(ni);
        double scale = 1.0;
        bool accepted = false;
        for (int h = 0; h <= 60; ++h) {
            for (std::size_t i = 0; i < ni; ++i) ucand[i] = u[i] + scale * step[i];
            fill_profile(ucand, q);
            if (monotone(q)) {
                const double e2 = discrete_energy(q, rho, n);
                // summation roundoff allowance; descent is still enforced by
                // the Newton direction
                if (e2 <= energy + 1e-13 * (1.0 + std::abs(energy))) {
                    u = ucand;
                    p = q;
                    energy = e2;
                    accepted = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if (!accepted)
            throw std::runtime_error(
                "minimize_profile: step rejected after 60 halvings (grad max-norm " +
                std::to_string(gmax) + ", energy " + std::to_string(energy) + ")");
    }
    throw std::runtime_error("minimize_profile: no convergence within 200 iterations");
}

std::vector<double> el_residual(const DiscreteProfile& p, const RadialMetric& rho, Dimension n) {
    require_monotone(p);
    const std::size_t m = p.t.size() - 1;
    if (m < 32) throw std::domain_error("el_residual: need at least 32 cells");
    const int nn = n.value();

    // L_{H'} at cell midpoints
    std::vector<double> Lp(m), tmid(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double dt = p.t[i + 1] - p.t[i];
        const double tm = 0.5 * (p.t[i] + p.t[i + 1]);
        const double Hm = 0.5 * (p.H[i] + p.H[i + 1]);
        const double K = (p.H[i + 1] - p.H[i]) / dt;
        Lp[i] = cell_terms(K, Hm, tm, rho, nn, false).f_K * pow_half(tm * tm, nn - 1);
        tmid[i] = tm;
    }

    std::vector<double> r(m - 1);
    for (std::size_t i = 1; i < m; ++i) {
        const double h0 = p.t[i] - p.t[i - 1];
        const double h1 = p.t[i + 1] - p.t[i];
        const double Hd = (h0 * h0 * p.H[i + 1] - h1 * h1 * p.H[i - 1] +
                           (h1 * h1 - h0 * h0) * p.H[i]) /
                          (h0 * h1 * (h0 + h1));
        const double t = p.t[i];
        const double H = p.H[i];
        const double Q = Hd * Hd + (nn - 1) * H * H / (t * t);
        const double LH = pow_half(t * t, nn - 1) *
                          (rho.deriv(H) * pow_half(Q, nn) +
                           rho(H) * nn * (nn - 1) * H / (t * t) * pow_half(Q, nn - 2));
        const double dLp = (Lp[i] - Lp[i - 1]) / (tmid[i] - tmid[i - 1]);
        r[i - 1] = LH - dLp;
    }
    return r;
}

double first_integral(double H, double H_dot, double t, const RadialMetric& rho, Dimension n) {
    const int nn = n.value();
    const double a = H * H - t * t * H_dot * H_dot;
    const double b = H * H + t * t * H_dot * H_dot / (nn - 1);
    return rho(H) * a * pow_half(b, nn - 2);
}

double first_integral(const RadialSolution& sol, double t) {
    return first_integral(sol.eval(t), sol.deriv(t), t, sol.metric(), sol.n());
}

std::vector<double> elasticity_ode_residual(const RadialSolution& sol, double nu) {
    const int nn = sol.n().value();
    if (std::abs(sol.c()) < 1e-12 * (1.0 + sol.metric()(1.0)))
        throw std::domain_error(
            "elasticity_ode_residual: degenerate at c = 0 (eta is identically 1)");
    const auto t = sol.grid_t();
    const auto eta = sol.grid_eta();
    const std::size_t m = t.size() - 1;
    std::vector<double> r(m - 1);
    for (std::size_t i = 1; i < m; ++i) {
        const double h0 = std::log(t[i] / t[i - 1]);
        const double h1 = std::log(t[i + 1] / t[i]);
        const double deta_dx = (h0 * h0 * eta[i + 1] - h1 * h1 * eta[i - 1] +
                                (h1 * h1 - h0 * h0) * eta[i]) /
                               (h0 * h1 * (h0 + h1));
        const double etap = deta_dx / t[i];
        const double e2 = eta[i] * eta[i];
        const double lhs = (1.0 + e2) * etap / ((1.0 - e2) * (nn - 1.0 + e2));
        const double rhs = (nn + nu) / (nn * t[i]);
        r[i - 1] = lhs - rhs;
    }
    return r;
}

}  // namespace nharm
