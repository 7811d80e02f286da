#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nharm/solver.hpp"

namespace nharm {

/// Meridian map of the spherical homothety: phi(theta) = 2 atan(lambda tan(theta/2)),
/// a diffeomorphism of [0, pi] fixing both poles.
double meridian_map(double theta, double lambda);

/// Conformal factor of the homothety, 2 lambda / (1 + lambda^2 + (1-lambda^2) cos theta);
/// equals phi'(theta) = sin(phi)/sin(theta), with limits lambda and 1/lambda
/// at the poles.
double conformal_factor(double theta, double lambda);

/// Applies the homothety to a unit vector, with the last coordinate axis as
/// the pole: only the meridian angle moves.
std::vector<double> apply_homothety(std::span<const double> zeta, double lambda);

/// Normalized sphere average (1/omega_{n-1}) int_{S^{n-1}} [sigma^2 +
/// (n-1) |D Phi^lambda|^2]^{n/2}, reduced to a meridian integral. Equals
/// (sigma^2 + n - 1)^{n/2} at lambda = 1.
double phi_energy(double lambda, double sigma, Dimension n, double rel_tol = 1e-10);

/// Closed form of d^2/dlambda^2 phi_energy at lambda = 1:
/// (n-1) (sigma^2 + n-1)^{(n-4)/2} ((n-1) - (n-3) sigma^2).
/// Negative exactly when sigma > sqrt((n-1)/(n-3)) (n >= 4); for n = 3 it is
/// positive for every sigma, so the homothety family never helps there.
double phi_second_derivative(double sigma, Dimension n);

/// Energy of the twisted competitor h_lambda(x) = H(|x|) Phi^lambda(x/|x|)
/// built on a solved radial profile. Reduces to the radial energy at
/// lambda = 1.
double perturbed_energy(const RadialSolution& sol, double lambda,
                        double* err_estimate = nullptr);

/// Result of sweeping the homothety family.
struct HomothetySweep {
    std::vector<double> lambdas;
    std::vector<double> energies;
    double baseline = 0.0;       // energy of the radial map itself
    double quad_error = 0.0;     // combined quadrature error bound
    bool nonminimal = false;     // some member beats the baseline beyond noise
    std::optional<double> witness;  // lambda achieving the largest deficit
    /// eta_H(t) > sqrt((n-1)/(n-3)) on the whole grid (empty for n = 3,
    /// where the threshold is infinite).
    std::optional<bool> eta_above_threshold;
    bool within_minimal_range = true;   // c within the proven-minimal range
    bool below_threshold = false;       // c below the non-minimality threshold
};

/// Evaluates the perturbed energy on a geometric lambda-grid over
/// (1, lambda_max] and issues the verdict: non-minimal iff some energy when
/// it drops below the baseline by more than 10x the combined quadrature
/// error estimate.
HomothetySweep nonminimality_certificate(const RadialSolution& sol, double lambda_max = 1.5,
                                         int steps = 64);

}  // namespace nharm
