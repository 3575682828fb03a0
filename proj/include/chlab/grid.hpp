#pragma once

#include <cstddef>
#include <vector>

namespace chlab {

/// Uniform grid on [-L/2, L/2), periodic by default.
///
/// The count must be a power of two and at least 8 so that every spectral
/// operation in the library is exact on the discrete frequencies.
class Grid1D {
public:
    Grid1D(double length, std::size_t count, bool periodic = true);

    double length() const noexcept { return length_; }
    std::size_t size() const noexcept { return count_; }
    double dx() const noexcept { return dx_; }
    bool periodic() const noexcept { return periodic_; }

    /// Sample point x_i = -L/2 + i*dx.
    double x(std::size_t i) const noexcept { return -0.5 * length_ + static_cast<double>(i) * dx_; }
    std::vector<double> points() const;

    /// Angular wavenumber of real-FFT bin m (0 <= m <= N/2).
    double wavenumber(std::size_t m) const noexcept;
    /// Largest resolved wavenumber, pi*N/L.
    double nyquist() const noexcept;

    bool operator==(const Grid1D& other) const = default;

private:
    double length_;
    std::size_t count_;
    double dx_;
    bool periodic_;
};

}  // namespace chlab
