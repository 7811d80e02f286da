#pragma once

#include <vector>

#include "nharm/solver.hpp"

namespace nharm {

/// Increasing profile sampled on a geometric grid of [1, R] with pinned
/// boundary values H(1) = 1, H(R) = R_star.
struct DiscreteProfile {
    std::vector<double> t;
    std::vector<double> H;
};

/// Geometric grid t_i = R^{i/m} with the straight power-law initial profile
/// H_i = R_star^{log t_i / log R}.
DiscreteProfile geometric_profile(double R, double r_star, int m);

/// Midpoint-rule discretization of the radial energy; second order in the
/// largest cell width. Throws on a non-monotone profile.
double discrete_energy(const DiscreteProfile& p, const RadialMetric& rho, Dimension n);

/// d(discrete energy)/dH_i at the interior nodes i = 1..m-1.
std::vector<double> discrete_energy_gradient(const DiscreteProfile& p, const RadialMetric& rho,
                                             Dimension n);

struct OptimizerStep {
    int iteration = 0;
    double energy = 0.0;
    double grad_norm = 0.0;
};

/// Direct minimization of the discrete energy over interior node values
/// (in log H), boundary pinned, by damped Newton on the tridiagonal system
/// with a monotonicity safeguard. Converges to the radial solution profile
/// at second order in the grid.
DiscreteProfile minimize_profile(double R, double r_star, const RadialMetric& rho, Dimension n,
                                 int m, double tol = 1e-10,
                                 std::vector<OptimizerStep>* trace = nullptr);

/// Euler-Lagrange residual L_H - d/dt L_{H'} at the interior nodes,
/// discretized with central differences. O(m^-2) for solution profiles.
std::vector<double> el_residual(const DiscreteProfile& p, const RadialMetric& rho, Dimension n);

/// First integral of the radial equation,
/// rho(H) (H^2 - t^2 H'^2) (H^2 + t^2 H'^2/(n-1))^{(n-2)/2};
/// constant (= c) exactly when H solves the equation.
double first_integral(double H, double H_dot, double t, const RadialMetric& rho, Dimension n);
double first_integral(const RadialSolution& sol, double t);

/// Residual of the elasticity equation for power weights rho(s) = s^nu:
/// (1+eta^2) eta' / ((1-eta^2)(n-1+eta^2)) - (n+nu)/(n t) at interior grid
/// nodes, with eta' from central differences. Requires c != 0.
std::vector<double> elasticity_ode_residual(const RadialSolution& sol, double nu);

}  // namespace nharm
