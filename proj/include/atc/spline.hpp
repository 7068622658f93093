#pragma once

#include <vector>

namespace atc {

/// Natural interpolating cubic spline over strictly increasing knots.
/// Passes through every sample point; second derivative zero at the ends.
/// Two points degrade to linear interpolation.
class CubicSpline {
  public:
    /// Throws std::invalid_argument unless knots are strictly increasing
    /// and there are at least two of them.
    CubicSpline(std::vector<double> t, std::vector<double> value);

    /// Spline value at query time. Queries are clamped to the knot range.
    double operator()(double t) const;

    double t_min() const { return t_.front(); }
    double t_max() const { return t_.back(); }

  private:
    std::vector<double> t_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at knots
};

}  // namespace atc
