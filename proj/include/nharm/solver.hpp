#pragma once

#include <span>
#include <vector>

#include "nharm/characteristic.hpp"
#include "nharm/interp.hpp"
#include "nharm/metric.hpp"

namespace nharm {

/// Quality metrics recorded while constructing a RadialSolution.
struct SolveDiagnostics {
    double quad_error = 0.0;      // accumulated quadrature error estimate of log T
    double slope_mismatch = 0.0;  // max relative gap between interpolant slope and H eta / t
};

/// A solved radial deformation H_c : [1, R] -> [1, R_star]. The profile is
/// sampled on a geometric grid of the image interval, inverted through the
/// forward integral, and evaluated by monotone cubic interpolation in
/// log-log coordinates. Immutable once built; concurrent reads are safe.
class RadialSolution {
public:
    Dimension n() const { return n_; }
    const RadialMetric& metric() const { return metric_; }
    double c() const { return c_; }
    double R() const { return R_; }
    double R_star() const { return R_star_; }

    std::span<const double> grid_t() const { return t_; }
    std::span<const double> grid_h() const { return h_; }
    std::span<const double> grid_eta() const { return eta_; }

    double eval(double t) const;   // H_c(t)
    double deriv(double t) const;  // dH/dt from the interpolant
    /// eta_H(t) = sqrt(Psi(v_c(H_c(t)))), recomputed from the profile value.
    Elasticity elasticity(double t) const;

    double inverse_eval(double s) const;   // F = H_c^{-1} : [1, R_star] -> [1, R]
    double inverse_deriv(double s) const;  // dF/ds

    const CharBounds& bounds() const { return bounds_; }
    bool within_minimal_range() const { return within_minimal_range_; }
    const SolveDiagnostics& diagnostics() const { return diag_; }

private:
    friend RadialSolution solve_profile(double, double, const RadialMetric&, Dimension, int);

    RadialSolution(Dimension n, RadialMetric metric) : n_(n), metric_(std::move(metric)) {}

    Dimension n_;
    RadialMetric metric_;
    double c_ = 0.0, R_ = 0.0, R_star_ = 0.0;
    std::vector<double> t_, h_, eta_;
    MonotoneCubic fwd_, inv_;  // log H vs log t and its inverse
    CharBounds bounds_;
    bool within_minimal_range_ = true;
    SolveDiagnostics diag_;
};

/// T_c(s) = exp( int_1^s dy / (y sqrt(Psi(v_c(y)))) ): the radius in the
/// domain annulus whose image is s. Returns +inf when the integral diverges
/// (c at the critical value on a metric whose weight product is flat at the
/// inner edge). Absolute quadrature tolerance 1e-11 on the exponent.
double forward_map(double s, double c, const RadialMetric& rho, Dimension n);

/// R = T_c(R_star): outer domain radius matching image radius R_star.
/// Strictly increasing in c.
double outer_radius(double c, double r_star, const RadialMetric& rho, Dimension n);

/// H_c(R): the outer image radius reached from domain radius R, found by
/// inverting the forward integral.
double image_radius(double c, double R, const RadialMetric& rho, Dimension n);

/// Minimal admissible outer image radius for domain A(1, R): below it no
/// radial harmonic diffeomorphism exists. Equals image_radius at c = rho(1).
double nitsche_bound(double R, const RadialMetric& rho, Dimension n);

/// Builds the full profile for a given characteristic constant and image
/// radius. m is the number of grid cells (>= 16).
RadialSolution solve_profile(double c, double r_star, const RadialMetric& rho, Dimension n,
                             int m = 1024);

/// Solves outer_radius(c, r_star) = R for c by monotone bisection, to
/// |Delta R| <= 1e-10 R. Throws NitscheViolation (carrying the minimal
/// admissible image radius) when no admissible c exists.
CharConstant solve_c(double R, double r_star, const RadialMetric& rho, Dimension n);

/// Elasticity of a solved profile at domain radius t in [1, R].
Elasticity elasticity_profile(const RadialSolution& sol, double t);

}  // namespace nharm
