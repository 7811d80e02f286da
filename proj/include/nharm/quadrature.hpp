#pragma once

#include <functional>

namespace nharm::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;   // accumulated error estimate
    long evaluations = 0;
    bool converged = false;
};

/// Adaptive quadrature on [a, b] built on a Gauss-Legendre 7/15 pair.
/// Intervals are bisected until |GL15 - GL7| meets the tolerance budget
/// prorated by interval length. Refinement stops at max_depth per branch or
/// after max_intervals segments overall (integrands at their roundoff noise
/// floor would otherwise subdivide forever); whatever remains is accepted
/// into the error estimate. Non-finite integrand values abort the
/// refinement and are reported through `converged = false`.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-10, int max_depth = 30,
                 long max_intervals = 2000);

}  // namespace nharm::quad
