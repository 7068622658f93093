#include "atc/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace atc {

CubicSpline::CubicSpline(std::vector<double> t, std::vector<double> value)
    : t_(std::move(t)), y_(std::move(value)) {
    const std::size_t n = t_.size();
    if (n < 2 || y_.size() != n) {
        throw std::invalid_argument("spline needs >= 2 samples with matching sizes");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(t_[i] > t_[i - 1])) {
            throw std::invalid_argument("spline knots must be strictly increasing");
        }
    }

    // Tridiagonal system for interior second derivatives, natural ends.
    m_.assign(n, 0.0);
    if (n == 2) return;
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    diag[0] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = t_[i] - t_[i - 1];
        const double h1 = t_[i + 1] - t_[i];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    diag[n - 1] = 1.0;

    // Thomas algorithm; lower diagonal equals h0 per row.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = t_[i] - t_[i - 1];
        const double lower = (i == 1) ? 0.0 : h0;  // row 0 is identity
        if (i > 1) {
            const double factor = lower / diag[i - 1];
            diag[i] -= factor * upper[i - 1];
            rhs[i] -= factor * rhs[i - 1];
        }
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    }
}

double CubicSpline::operator()(double t) const {
    t = std::clamp(t, t_.front(), t_.back());
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const std::size_t hi = std::min<std::size_t>(
        std::max<std::ptrdiff_t>(it - t_.begin(), 1), t_.size() - 1);
    const std::size_t lo = hi - 1;
    const double h = t_[hi] - t_[lo];
    const double a = (t_[hi] - t) / h;
    const double b = (t - t_[lo]) / h;
    return a * y_[lo] + b * y_[hi] +
           ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * (h * h) / 6.0;
}

}  // namespace atc
