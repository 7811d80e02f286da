#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace nharm {

/// Raised when a requested configuration lies outside the existence range:
/// the image annulus would be thinner than the critical profile allows
/// (equivalently c > rho(1)). When the minimal admissible outer image
/// radius has been computed it is carried along.
class NitscheViolation : public std::runtime_error {
public:
    explicit NitscheViolation(const std::string& what,
                              double min_image_radius = std::nan(""))
        : std::runtime_error(what), min_image_radius_(min_image_radius) {}

    /// Minimal admissible R_* for the offending configuration (NaN if unknown).
    double min_image_radius() const noexcept { return min_image_radius_; }

private:
    double min_image_radius_;
};

/// Raised when adaptive quadrature fails to reach its tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double value, double error_estimate)
        : std::runtime_error(what), value_(value), error_estimate_(error_estimate) {}
    double value() const noexcept { return value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double value_, error_estimate_;
};

}  // namespace nharm
