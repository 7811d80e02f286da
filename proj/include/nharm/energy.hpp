#pragma once

#include <functional>
#include <optional>

#include "nharm/solver.hpp"

namespace nharm {

enum class BoundBranch { NonNegativeC, NonPositiveC };

/// Energy of a deformation together with its sharp lower bound and the
/// decomposition of the bound into the modulus term and the boundary
/// (free-Lagrangian) term.
struct EnergyReport {
    double total = 0.0;
    double lower_bound = 0.0;
    BoundBranch branch = BoundBranch::NonNegativeC;
    double modulus_term = 0.0;
    double boundary_term = 0.0;
    double quad_err = 0.0;
};

using ProfileFn = std::function<double(double)>;

/// Weighted conformal energy of an increasing radial profile H on [1, R]:
/// omega_{n-1} int rho(H) t^{n-1} (H'^2 + (n-1) H^2/t^2)^{n/2} dt.
double radial_energy(const ProfileFn& H, const ProfileFn& H_dot, double R,
                     const RadialMetric& rho, Dimension n);
double radial_energy(const RadialSolution& sol);

/// Same energy evaluated through the solved parameterization:
/// omega_{n-1} int rho(H) H^n (eta^2 + n-1)^{n/2} dt/t.
double minimizer_energy(const RadialSolution& sol);

/// Sharp lower bound for the energy over homeomorphisms with the given
/// boundary data. The elasticity entering the boundary weight is recomputed
/// from the characteristic equation at every quadrature node, independent of
/// any solved profile. `total` is set to the bound itself; equality holds at
/// the radial solution.
EnergyReport lower_bound(double c, double R, double r_star, const RadialMetric& rho,
                         Dimension n);

/// Energy of a solved profile alongside its lower bound.
EnergyReport energy_report(const RadialSolution& sol);

/// The three boundary-data integrals for the radial map, each paired with
/// its closed-form value: a weighted Jacobian-type integral, the normal
/// integral (= Mod of the image annulus), and the tangential integral
/// (= Mod of the domain annulus).
struct FreeLagrangians {
    double weighted = 0.0, weighted_ref = 0.0;
    double normal = 0.0, normal_ref = 0.0;
    double tangential = 0.0, tangential_ref = 0.0;
};
FreeLagrangians free_lagrangians_radial(const RadialSolution& sol,
                                        const std::optional<ProfileFn>& weight = std::nullopt);

/// Inner distortion of the radial inverse map f(y) = F(|y|) y/|y| at radius
/// s, from the principal stretches (F'(s), F/s, ..., F/s).
double radial_inner_distortion(double F, double F_dot, double s, Dimension n);

/// n^{n/2} int rho K_I[f_c] over the image annulus, reduced to 1D. Equals
/// the energy of the forward map.
double distortion_energy(const RadialSolution& sol);

/// Energies of the solved profile and of its sphere inversion
/// H~ = 1/H under the inverted weight; the two must agree.
struct EnergyPair {
    double original = 0.0;
    double inverted = 0.0;
};
EnergyPair inversion_energy_check(const RadialSolution& sol);

}  // namespace nharm
