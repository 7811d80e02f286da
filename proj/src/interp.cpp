#include "nharm/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nharm {

namespace {

void validate_grid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 2 || x.size() != y.size())
        throw std::invalid_argument("MonotoneCubic: need at least two matching samples");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw std::invalid_argument("MonotoneCubic: abscissas must be strictly increasing");
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    validate_grid(x_, y_);
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        d[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    m_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m_[i] = 0.0;  // local extremum of the data
        } else {
            // Fritsch-Butland weighted harmonic mean
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // one-sided three-point endpoint slopes, kept inside the monotone region
    m_[0] = ((2.0 * h[0] + h[1]) * d[0] - h[0] * d[1]) / (h[0] + h[1]);
    if (m_[0] * d[0] <= 0.0)
        m_[0] = 0.0;
    else if (std::abs(m_[0]) > 3.0 * std::abs(d[0]))
        m_[0] = 3.0 * d[0];
    m_[n - 1] =
        ((2.0 * h[n - 2] + h[n - 3]) * d[n - 2] - h[n - 2] * d[n - 3]) / (h[n - 2] + h[n - 3]);
    if (m_[n - 1] * d[n - 2] <= 0.0)
        m_[n - 1] = 0.0;
    else if (std::abs(m_[n - 1]) > 3.0 * std::abs(d[n - 2]))
        m_[n - 1] = 3.0 * d[n - 2];
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y,
                             std::vector<double> slopes)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slopes)) {
    validate_grid(x_, y_);
    if (m_.size() != x_.size())
        throw std::invalid_argument("MonotoneCubic: slope count must match sample count");
    clamp_slopes();
}

void MonotoneCubic::clamp_slopes() {
    const std::size_t n = x_.size();
    for (std::size_t i = 0; i < n; ++i) {
        double lim = std::numeric_limits<double>::infinity();
        if (i > 0) {
            const double dl = (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
            lim = std::min(lim, 3.0 * dl);
        }
        if (i + 1 < n) {
            const double dr = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
            lim = std::min(lim, 3.0 * dr);
        }
        m_[i] = std::clamp(m_[i], 0.0, std::max(lim, 0.0));
    }
}

std::size_t MonotoneCubic::locate(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t k = static_cast<std::size_t>(it - x_.begin());
    if (k == 0) return 0;
    if (k >= x_.size()) return x_.size() - 2;
    return k - 1;
}

double MonotoneCubic::operator()(double x) const {
    const std::size_t k = locate(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[k] + h10 * h * m_[k] + h01 * y_[k + 1] + h11 * h * m_[k + 1];
}

double MonotoneCubic::derivative(double x) const {
    const std::size_t k = locate(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    const double t2 = t * t;
    const double g00 = (6 * t2 - 6 * t) / h;
    const double g10 = 3 * t2 - 4 * t + 1;
    const double g01 = (-6 * t2 + 6 * t) / h;
    const double g11 = 3 * t2 - 2 * t;
    return g00 * y_[k] + g10 * m_[k] + g01 * y_[k + 1] + g11 * m_[k + 1];
}

}  // namespace nharm
