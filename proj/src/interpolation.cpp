#include "chlab/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "chlab/error.hpp"

namespace chlab::interp {

double hermite_cubic(double s, double h, double f0, double f1, double d0, double d1) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1;
}

FlowMapInverse::FlowMapInverse(std::span<const double> y, std::span<const double> y_xi, double h,
                               double period)
    : y_(y.begin(), y.end()), slope_left_(y.size()), slope_right_(y.size()), h_(h), period_(period) {
    const std::size_t n = y.size();
    if (n < 2 || y_xi.size() != n) throw InvalidArgument("flow map needs matching y and y_xi");
    for (std::size_t i = 0; i < n; ++i) {
        const double secant = (y_at(i + 1) - y_at(i)) / h;
        if (!(secant > 0.0)) {
            throw BreakdownError("flow map is not strictly increasing", 0.0,
                                 static_cast<double>(i), secant);
        }
        double m0 = std::max(y_xi[i], 0.0);
        double m1 = std::max(y_xi[(i + 1) % n], 0.0);
        const double a = m0 / secant;
        const double b = m1 / secant;
        const double r2 = a * a + b * b;
        if (r2 > 9.0) {
            const double tau = 3.0 / std::sqrt(r2);
            m0 *= tau;
            m1 *= tau;
        }
        slope_left_[i] = m0;
        slope_right_[i] = m1;
    }
}

double FlowMapInverse::y_at(std::size_t node) const {
    const std::size_t n = y_.size();
    return node < n ? y_[node] : y_[node - n] + period_;
}

double FlowMapInverse::cubic_y(std::size_t seg, double s) const {
    return hermite_cubic(s, h_, y_at(seg), y_at(seg + 1), slope_left_[seg], slope_right_[seg]);
}

double FlowMapInverse::cubic_dy(std::size_t seg, double s) const {
    const double y0 = y_at(seg);
    const double y1 = y_at(seg + 1);
    const double d0 = slope_left_[seg] * h_;
    const double d1 = slope_right_[seg] * h_;
    const double s2 = s * s;
    return (6.0 * s2 - 6.0 * s) * y0 + (3.0 * s2 - 4.0 * s + 1.0) * d0 + (-6.0 * s2 + 6.0 * s) * y1 +
           (3.0 * s2 - 2.0 * s) * d1;
}

FlowMapInverse::Location FlowMapInverse::locate(double x) const {
    const double y0 = y_.front();
    double xr = x - y0;
    xr -= period_ * std::floor(xr / period_);
    xr += y0;
    if (xr >= y0 + period_) xr -= period_;

    auto it = std::upper_bound(y_.begin(), y_.end(), xr);
    const std::size_t seg = static_cast<std::size_t>(std::distance(y_.begin(), it)) - 1;
    const double a = y_at(seg);
    const double b = y_at(seg + 1);

    // The limited cubic is monotone on [0,1]: safeguarded Newton.
    double lo = 0.0;
    double hi = 1.0;
    double s = std::clamp((xr - a) / (b - a), 0.0, 1.0);
    for (int iter = 0; iter < 60; ++iter) {
        const double r = cubic_y(seg, s) - xr;
        if (r > 0.0) {
            hi = s;
        } else {
            lo = s;
        }
        if (std::abs(r) <= 1e-15 * (1.0 + std::abs(xr))) break;
        const double d = cubic_dy(seg, s);
        double next = d > 0.0 ? s - r / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - s) < 1e-16) break;
        s = next;
    }
    return {seg, s};
}

double FlowMapInverse::evaluate(const Location& loc, std::span<const double> f,
                                std::span<const double> f_xi) const {
    const std::size_t n = y_.size();
    const std::size_t j = (loc.segment + 1) % n;
    return hermite_cubic(loc.s, h_, f[loc.segment], f[j], f_xi[loc.segment], f_xi[j]);
}

}  // namespace chlab::interp
