#include "chlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chlab/error.hpp"

namespace chlab {

namespace {
bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid1D::Grid1D(double length, std::size_t count, bool periodic)
    : length_(length), count_(count), dx_(0.0), periodic_(periodic) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw InvalidArgument("grid length must be positive and finite");
    }
    if (count < 8 || !is_power_of_two(count)) {
        throw InvalidArgument("grid count must be a power of two >= 8, got " + std::to_string(count));
    }
    dx_ = length / static_cast<double>(count);
}

std::vector<double> Grid1D::points() const {
    std::vector<double> xs(count_);
    for (std::size_t i = 0; i < count_; ++i) xs[i] = x(i);
    return xs;
}

double Grid1D::wavenumber(std::size_t m) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(m) / length_;
}

double Grid1D::nyquist() const noexcept { return wavenumber(count_ / 2); }

}  // namespace chlab
