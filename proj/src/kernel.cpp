#include "chlab/kernel.hpp"

#include <cmath>
#include <string>

#include "chlab/error.hpp"
#include "chlab/fft.hpp"

namespace chlab::kernel {

WeightedNodes::WeightedNodes(std::span<const double> y, std::span<const double> w) : y_(y), w_(w) {
    if (y.size() != w.size()) throw InvalidArgument("nodes and weights differ in length");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!std::isfinite(y[i])) throw NonFiniteError("non-finite node", i);
        if (!std::isfinite(w[i])) throw NonFiniteError("non-finite weight", i);
        if (i > 0 && !(y[i] > y[i - 1])) {
            throw InvalidArgument("nodes must be strictly increasing (violated at index " +
                                  std::to_string(i) + ")");
        }
    }
}

ScanPair exp_scans(const WeightedNodes& nodes) {
    const auto y = nodes.y();
    const auto w = nodes.w();
    const std::size_t n = nodes.size();
    ScanPair s{std::vector<double>(n), std::vector<double>(n)};
    if (n == 0) return s;

    s.left[0] = w[0];
    for (std::size_t i = 1; i < n; ++i) {
        s.left[i] = std::exp(-(y[i] - y[i - 1])) * s.left[i - 1] + w[i];
    }
    s.right[n - 1] = w[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        s.right[i] = std::exp(-(y[i + 1] - y[i])) * s.right[i + 1] + w[i];
    }
    return s;
}

Convolutions convolve(const WeightedNodes& nodes) {
    const auto s = exp_scans(nodes);
    const auto w = nodes.w();
    const std::size_t n = nodes.size();
    Convolutions c{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        c.p[i] = 0.5 * (s.left[i] + s.right[i] - w[i]);
        c.dp[i] = 0.5 * (s.left[i] - s.right[i]);
    }
    return c;
}

std::vector<double> conv_p(const WeightedNodes& nodes) { return convolve(nodes).p; }

std::vector<double> conv_dp(const WeightedNodes& nodes) { return convolve(nodes).dp; }

std::vector<double> helmholtz_inverse(std::span<const double> u, const Grid1D& grid) {
    return spectral::apply(u, grid, [](double k, std::size_t) { return spectral::Complex{1.0 / (1.0 + k * k), 0.0}; });
}

std::vector<double> helmholtz_derivative(std::span<const double> u, const Grid1D& grid) {
    const std::size_t nyq = u.size() / 2;
    return spectral::apply(u, grid, [nyq](double k, std::size_t m) {
        return m == nyq ? spectral::Complex{0.0, 0.0} : spectral::Complex{0.0, k / (1.0 + k * k)};
    });
}

EulerianField helmholtz_inverse(const EulerianField& field) {
    field.validate();
    if (!field.grid.periodic()) throw InvalidArgument("helmholtz_inverse requires a periodic grid");
    EulerianField out{field.grid, helmholtz_inverse(field.u, field.grid), std::nullopt, field.t};
    if (field.eta) out.eta = helmholtz_inverse(*field.eta, field.grid);
    return out;
}

EulerianField helmholtz_derivative(const EulerianField& field) {
    field.validate();
    if (!field.grid.periodic()) throw InvalidArgument("helmholtz_derivative requires a periodic grid");
    EulerianField out{field.grid, helmholtz_derivative(field.u, field.grid), std::nullopt, field.t};
    if (field.eta) out.eta = helmholtz_derivative(*field.eta, field.grid);
    return out;
}

}  // namespace chlab::kernel
