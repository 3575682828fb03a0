#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "chlab/grid.hpp"

namespace chlab::spectral {

using Complex = std::complex<double>;

/// Real-to-complex transform, N/2+1 bins, unnormalized.
std::vector<Complex> forward(std::span<const double> u);

/// Inverse of forward(), normalized so inverse(forward(u)) == u.
std::vector<double> inverse(std::span<const Complex> coeffs, std::size_t n);

/// Applies a Fourier multiplier. `mult(k, m)` receives the angular wavenumber
/// and the bin index; the returned value scales bin m. Odd (imaginary)
/// multipliers should vanish at the Nyquist bin to keep the result real.
template <class Multiplier>
std::vector<double> apply(std::span<const double> u, const Grid1D& grid, Multiplier&& mult) {
    auto c = forward(u);
    for (std::size_t m = 0; m < c.size(); ++m) c[m] *= mult(grid.wavenumber(m), m);
    return inverse(c, u.size());
}

/// Spectral first derivative (Nyquist bin dropped).
std::vector<double> derivative(std::span<const double> u, const Grid1D& grid);

/// Second-order centered difference, periodic.
std::vector<double> centered_difference(std::span<const double> u, const Grid1D& grid);

/// 2/3-rule truncation: zeroes bins with m > N/3.
std::vector<double> dealias(std::span<const double> u);

/// True for bins kept by the 2/3 rule.
inline bool kept_by_two_thirds(std::size_t m, std::size_t n) { return 3 * m <= n; }

}  // namespace chlab::spectral
