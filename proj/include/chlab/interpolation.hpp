#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chlab::interp {

/// Cubic Hermite on a segment of width h, s in [0,1]; d0, d1 are slopes
/// with respect to the segment's abscissa.
double hermite_cubic(double s, double h, double f0, double f1, double d0, double d1);

/// Inverse of a periodic, strictly increasing flow map sampled at uniform
/// labels with spacing h. y(xi + period) = y(xi) + period.
///
/// Each segment carries a cubic Hermite in xi whose end slopes are the
/// stored y_xi, limited (Fritsch-Carlson) so the cubic stays monotone.
class FlowMapInverse {
public:
    FlowMapInverse(std::span<const double> y, std::span<const double> y_xi, double h, double period);

    struct Location {
        std::size_t segment;  // left node index; segment N-1 wraps to node 0
        double s;             // local coordinate in [0,1]
    };

    Location locate(double x) const;

    /// Hermite interpolation of periodic nodal data f with xi-slopes f_xi.
    double evaluate(const Location& loc, std::span<const double> f, std::span<const double> f_xi) const;

    std::size_t size() const noexcept { return y_.size(); }

private:
    double y_at(std::size_t node) const;  // node in [0, N], wraps with period
    double cubic_y(std::size_t seg, double s) const;
    double cubic_dy(std::size_t seg, double s) const;

    std::vector<double> y_;
    std::vector<double> slope_left_;   // limited slopes per segment
    std::vector<double> slope_right_;
    double h_;
    double period_;
};

}  // namespace chlab::interp
