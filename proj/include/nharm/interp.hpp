#pragma once

#include <vector>

namespace nharm {

/// Monotone piecewise-cubic Hermite interpolant on strictly increasing
/// abscissas. Node slopes are either supplied by the caller (and clamped
/// into the monotone region) or derived with the Fritsch-Butland formula.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);
    MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes);

    double operator()(double x) const;
    double derivative(double x) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

private:
    std::vector<double> x_, y_, m_;
    std::size_t locate(double x) const;
    void clamp_slopes();
};

}  // namespace nharm
