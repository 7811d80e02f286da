#include "nharm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nharm/errors.hpp"
#include "nharm/quadrature.hpp"

namespace nharm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kForwardAbsTol = 1e-11;   // on the exponent log T
constexpr double kSolveRelTol = 1e-10;     // |Lambda(c) - R| <= tol * R

struct Context {
    double c;
    const RadialMetric* rho;
    Dimension n;

    double integrand(double y) const {
        const double z = psi(v_c(y, c, *rho, n), n);
        return 1.0 / (y * std::sqrt(z));  // +inf where Psi vanishes
    }

    // Integrand after the substitution y = lo + u^2. Near the singular edge
    // 1 - v_c(y) is lost to cancellation, so Psi is replaced there by its
    // linearization Psi ~ (2(n-1)/n) (eps0 + a u^2) with the exact slope
    // a = (n rho(1) + rho'(1)) / rho(1).
    double sub_integrand(double u) const {
        const double lo = rho->domain_lower();
        const double y = lo + u * u;
        const int nn = n.value();
        const double r1 = (*rho)(lo);
        const double eps0 = std::max(0.0, 1.0 - c / r1);
        const double a = (nn * r1 + lo * rho->deriv(lo)) / r1;
        const double lin = (2.0 * (nn - 1.0) / nn) * (eps0 + a * u * u);
        if (lin < 1e-8) return 2.0 * u / (y * std::sqrt(lin));
        return 2.0 * u * integrand(y);
    }
};

bool near_critical(const Context& ctx) {
    const double lo = ctx.rho->domain_lower();
    return ctx.c / (std::pow(lo, ctx.n.value()) * (*ctx.rho)(lo)) >= 0.5;
}

// At the exact critical constant the integrand behaves like
// 1/sqrt(k (y-1)); if the weight product rho(s) s^n is flat at the inner
// edge the exponent integral diverges and T_c == +inf beyond s = 1.
bool critical_and_divergent(const Context& ctx) {
    const double lo = ctx.rho->domain_lower();
    const double r1 = (*ctx.rho)(lo);
    if (ctx.c < r1 * (1.0 - 1e-12)) return false;
    const double slope = ctx.n.value() * r1 + lo * ctx.rho->deriv(lo);
    return slope <= 1e-8 * ctx.n.value() * r1;
}

// int_a^b of the T integrand, with the substitution y = 1 + u^2 applied on
// the initial stretch when the integrand is (nearly) singular at y = 1.
quad::Result log_T_segment(const Context& ctx, double a, double b, bool use_sub,
                           double delta_cap, double abs_tol) {
    quad::Result total;
    total.converged = true;
    const double lo = ctx.rho->domain_lower();
    double plain_from = a;
    if (use_sub && a < lo + delta_cap) {
        const double cut = std::min(b, lo + delta_cap);
        auto g = [&ctx](double u) { return ctx.sub_integrand(u); };
        const auto part = quad::integrate(g, std::sqrt(std::max(a - lo, 0.0)),
                                          std::sqrt(cut - lo), abs_tol * 0.5, 1e-12);
        total.value += part.value;
        total.error += part.error;
        total.evaluations += part.evaluations;
        total.converged = total.converged && part.converged;
        plain_from = cut;
    }
    if (plain_from < b) {
        auto f = [&ctx](double y) { return ctx.integrand(y); };
        const auto part = quad::integrate(f, plain_from, b, abs_tol * 0.5, 1e-12);
        total.value += part.value;
        total.error += part.error;
        total.evaluations += part.evaluations;
        total.converged = total.converged && part.converged;
    }
    return total;
}

// log T_c(s) over [domain_lower, s].
quad::Result log_T(const Context& ctx, double s, double span_hint) {
    const double lo = ctx.rho->domain_lower();
    const double delta = std::min(0.1, 0.5 * (span_hint - lo));
    return log_T_segment(ctx, lo, s, near_critical(ctx), delta, kForwardAbsTol);
}

void require_regular(const RadialMetric& rho, Dimension n, double r_star) {
    if (rho.domain_lower() != 1.0)
        throw std::invalid_argument(
            "solver requires metrics normalized to inner radius 1");
    const auto cert = check_regular(rho, n, r_star);
    if (!cert.regular)
        throw std::invalid_argument(
            "metric is not regular on [1, " + std::to_string(r_star) +
            "]: rho(s)s^n dips below its inner value near s=" +
            std::to_string(*cert.violation_at));
}

void require_admissible_c(double c, const RadialMetric& rho) {
    const double c_max = rho(rho.domain_lower());
    if (c - c_max > 1e-12 * std::abs(c_max))
        throw NitscheViolation("c = " + std::to_string(c) + " exceeds c_max = rho(1) = " +
                               std::to_string(c_max) + ": no radial harmonic map exists");
}

}  // namespace

double forward_map(double s, double c, const RadialMetric& rho, Dimension n) {
    const double lo = rho.domain_lower();
    if (s < lo * (1.0 - 1e-12))
        throw std::domain_error("forward_map: s below the metric domain");
    require_admissible_c(c, rho);
    require_regular(rho, n, std::max(s, lo * (1.0 + 1e-9)));
    Context ctx{c, &rho, n};
    if (critical_and_divergent(ctx)) return s > lo ? kInf : lo;
    if (s <= lo) return lo;
    const auto r = log_T(ctx, s, s);
    if (!std::isfinite(r.value) || (!r.converged && r.error > 1e-8))
        throw QuadratureError("forward_map: quadrature failed to converge", r.value, r.error);
    return std::exp(r.value);
}

double outer_radius(double c, double r_star, const RadialMetric& rho, Dimension n) {
    if (!(r_star > 1.0)) throw std::domain_error("outer_radius: r_star > 1 required");
    return forward_map(r_star, c, rho, n);
}

namespace {

// Inverts the exponent integral I(s) = log R on a bracket; assumes the
// caller validated inputs. Returns domain_lower when R == 1.
double invert_log_T(const Context& ctx, double logR, double s_cap) {
    const double lo = ctx.rho->domain_lower();
    if (logR <= 0.0) return lo;
    if (critical_and_divergent(ctx)) return lo;

    auto I = [&](double s) { return log_T(ctx, s, std::max(s, lo + 1e-6)).value; };

    double hi = std::min(s_cap, lo + 1.0);
    int guard = 0;
    while (I(hi) < logR) {
        if (hi >= s_cap)
            throw std::domain_error("image radius exceeds the metric domain upper bound");
        hi = std::min(s_cap, lo + 2.0 * (hi - lo));
        if (++guard > 200)
            throw std::runtime_error("image_radius: failed to bracket the image radius");
    }
    double a = lo, b = hi;
    for (int it = 0; it < 200 && (b - a) > 1e-13 * b; ++it) {
        const double mid = 0.5 * (a + b);
        (I(mid) < logR ? a : b) = mid;
    }
    return 0.5 * (a + b);
}

}  // namespace

double image_radius(double c, double R, const RadialMetric& rho, Dimension n) {
    if (!(R >= 1.0)) throw std::domain_error("image_radius: R >= 1 required");
    require_admissible_c(c, rho);
    const double probe = std::isfinite(rho.domain_upper()) ? rho.domain_upper()
                                                           : std::max(16.0, 4.0 * R);
    require_regular(rho, n, probe);
    Context ctx{c, &rho, n};
    return invert_log_T(ctx, std::log(R), rho.domain_upper());
}

double nitsche_bound(double R, const RadialMetric& rho, Dimension n) {
    return image_radius(rho(rho.domain_lower()), R, rho, n);
}

RadialSolution solve_profile(double c, double r_star, const RadialMetric& rho, Dimension n,
                             int m) {
    if (!(r_star > 1.0))
        throw std::domain_error("solve_profile: degenerate annulus (r_star must exceed 1)");
    if (m < 16) throw std::domain_error("solve_profile: grid size m >= 16 required");
    require_regular(rho, n, r_star);
    require_admissible_c(c, rho);

    Context ctx{c, &rho, n};
    if (critical_and_divergent(ctx))
        throw std::domain_error(
            "solve_profile: the forward integral diverges at the critical constant for this "
            "metric; the profile degenerates to H = 1");

    RadialSolution sol(n, rho);
    sol.c_ = c;
    sol.R_star_ = r_star;
    sol.bounds_ = c_bounds(rho, n, r_star);
    sol.within_minimal_range_ =
        !sol.bounds_.c_min || c >= *sol.bounds_.c_min - 1e-12 * (1.0 + std::abs(*sol.bounds_.c_min));

    // geometric image grid s_j, cumulative exponent integral, t_j = exp(I_j)
    const double log_rs = std::log(r_star);
    const bool crit = near_critical(ctx);
    const double delta = std::min(0.1, 0.5 * (r_star - 1.0));
    sol.t_.resize(m + 1);
    sol.h_.resize(m + 1);
    sol.eta_.resize(m + 1);
    double acc = 0.0, acc_err = 0.0;
    sol.t_[0] = 1.0;
    sol.h_[0] = 1.0;
    sol.eta_[0] = std::sqrt(psi(v_c(1.0, c, rho, n), n));
    for (int j = 1; j <= m; ++j) {
        const double s_prev = std::exp(log_rs * (j - 1) / m);
        const double s_j = j == m ? r_star : std::exp(log_rs * j / m);
        const auto seg = log_T_segment(ctx, s_prev, s_j, crit, delta, 1e-13);
        if (!std::isfinite(seg.value))
            throw QuadratureError("solve_profile: forward integral diverged", seg.value,
                                  seg.error);
        acc += seg.value;
        acc_err += seg.error;
        sol.t_[j] = std::exp(acc);
        sol.h_[j] = s_j;
        sol.eta_[j] = std::sqrt(psi(v_c(s_j, c, rho, n), n));
        if (!(sol.t_[j] > sol.t_[j - 1]))
            throw QuadratureError("solve_profile: grid lost strict monotonicity", sol.t_[j],
                                  acc_err);
    }
    sol.R_ = sol.t_[m];
    sol.diag_.quad_error = acc_err;

    // interpolants in log-log coordinates; nodal slopes are the exact
    // elasticities d log H / d log t = eta
    std::vector<double> x(m + 1), y(m + 1);
    for (int j = 0; j <= m; ++j) {
        x[j] = std::log(sol.t_[j]);
        y[j] = std::log(sol.h_[j]);
    }
    sol.fwd_ = MonotoneCubic(x, y, std::vector<double>(sol.eta_.begin(), sol.eta_.end()));
    const double eta_min = *std::min_element(sol.eta_.begin(), sol.eta_.end());
    if (eta_min > 1e-8) {
        std::vector<double> inv_slope(m + 1);
        for (int j = 0; j <= m; ++j) inv_slope[j] = 1.0 / sol.eta_[j];
        sol.inv_ = MonotoneCubic(y, x, std::move(inv_slope));
    } else {
        sol.inv_ = MonotoneCubic(y, x);  // critical profile: data-driven slopes
    }

    // reconcile the interpolant slope with H eta / t at cell midpoints
    double mismatch = 0.0;
    for (int j = m / 8; j < m - m / 8; ++j) {
        const double tm = std::sqrt(sol.t_[j] * sol.t_[j + 1]);
        const double H = sol.eval(tm);
        const double expected = H * std::sqrt(psi(v_c(H, c, rho, n), n)) / tm;
        if (expected > 0.0)
            mismatch = std::max(mismatch, std::abs(sol.deriv(tm) - expected) / expected);
    }
    sol.diag_.slope_mismatch = mismatch;
    return sol;
}

double RadialSolution::eval(double t) const {
    const double x = std::log(t);
    if (x < fwd_.x_front() - 1e-9 || x > fwd_.x_back() + 1e-9)
        throw std::domain_error("RadialSolution::eval: t outside [1, R]");
    return std::exp(fwd_(std::clamp(x, fwd_.x_front(), fwd_.x_back())));
}

double RadialSolution::deriv(double t) const {
    const double x = std::log(t);
    if (x < fwd_.x_front() - 1e-9 || x > fwd_.x_back() + 1e-9)
        throw std::domain_error("RadialSolution::deriv: t outside [1, R]");
    const double xc = std::clamp(x, fwd_.x_front(), fwd_.x_back());
    return std::exp(fwd_(xc)) / t * fwd_.derivative(xc);
}

Elasticity RadialSolution::elasticity(double t) const {
    const double zeta = psi(v_c(eval(t), c_, metric_, n_), n_);
    return Elasticity{std::sqrt(zeta), zeta};
}

double RadialSolution::inverse_eval(double s) const {
    const double x = std::log(s);
    if (x < inv_.x_front() - 1e-9 || x > inv_.x_back() + 1e-9)
        throw std::domain_error("RadialSolution::inverse_eval: s outside [1, R_star]");
    return std::exp(inv_(std::clamp(x, inv_.x_front(), inv_.x_back())));
}

double RadialSolution::inverse_deriv(double s) const {
    const double x = std::log(s);
    if (x < inv_.x_front() - 1e-9 || x > inv_.x_back() + 1e-9)
        throw std::domain_error("RadialSolution::inverse_deriv: s outside [1, R_star]");
    const double xc = std::clamp(x, inv_.x_front(), inv_.x_back());
    return std::exp(inv_(xc)) / s * inv_.derivative(xc);
}

CharConstant solve_c(double R, double r_star, const RadialMetric& rho, Dimension n) {
    if (!(R > 1.0) || !(r_star > 1.0))
        throw std::domain_error("solve_c: degenerate annulus (R and r_star must exceed 1)");
    require_regular(rho, n, r_star);

    CharConstant out;
    out.bounds = c_bounds(rho, n, r_star);
    const double c_max = out.bounds.c_max;

    auto lambda_of = [&](double c) -> double {
        Context cc{c, &rho, n};
        if (critical_and_divergent(cc)) return kInf;
        return log_T(cc, r_star, r_star).value;  // log of the outer radius
    };
    const double target = std::log(R);

    const double lam_max = lambda_of(c_max);
    if (lam_max < target * (1.0 - 1e-12) - 1e-14) {
        const double min_rs = nitsche_bound(R, rho, n);
        throw NitscheViolation(
            "no radial harmonic map A(1," + std::to_string(R) + ") -> A(1," +
                std::to_string(r_star) + "): image annulus too thin; minimal admissible "
                "R_star = " + std::to_string(min_rs),
            min_rs);
    }

    // expand the lower bracket until the outer radius falls below R
    double lo = std::min(0.0, c_max) - 1.0;
    double lam_lo = lambda_of(lo);
    int guard = 0;
    while (lam_lo >= target) {
        lo = c_max - 2.0 * (c_max - lo);
        lam_lo = lambda_of(lo);
        if (++guard > 200)
            throw std::runtime_error("solve_c: failed to bracket the characteristic constant");
    }

    double hi = c_max;
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 300; ++it) {
        mid = 0.5 * (lo + hi);
        const double lam = lambda_of(mid);
        if (std::abs(std::expm1(lam - target)) <= kSolveRelTol) break;  // |Lambda - R| <= tol R
        (lam < target ? lo : hi) = mid;
        if (hi - lo <= 1e-16 * (1.0 + std::abs(mid))) break;
    }
    out.c = mid;
    out.within_minimal_range =
        !out.bounds.c_min || mid >= *out.bounds.c_min - 1e-12 * (1.0 + std::abs(*out.bounds.c_min));
    return out;
}

Elasticity elasticity_profile(const RadialSolution& sol, double t) {
    if (t < 1.0 - 1e-12 || t > sol.R() * (1.0 + 1e-12))
        throw std::domain_error("elasticity_profile: t outside [1, R]");
    return sol.elasticity(std::clamp(t, 1.0, sol.R()));
}

}  // namespace nharm
