#pragma once

#include <span>
#include <vector>

#include "chlab/fields.hpp"

namespace chlab::kernel {

/// Atomic measure sum_j w_j delta(x - y_j) on strictly increasing nodes.
/// A view: the spans must outlive it.
class WeightedNodes {
public:
    /// Throws InvalidArgument on size mismatch or non-increasing y,
    /// NonFiniteError on NaN/inf entries.
    WeightedNodes(std::span<const double> y, std::span<const double> w);

    std::span<const double> y() const noexcept { return y_; }
    std::span<const double> w() const noexcept { return w_; }
    std::size_t size() const noexcept { return y_.size(); }

private:
    std::span<const double> y_;
    std::span<const double> w_;
};

/// left[i]  = sum_{j<=i} exp(-(y_i - y_j)) w_j
/// right[i] = sum_{j>=i} exp(-(y_j - y_i)) w_j
struct ScanPair {
    std::vector<double> left;
    std::vector<double> right;
};

/// Two O(N) recursions using only neighbour gaps, so large |y| cannot
/// overflow.
ScanPair exp_scans(const WeightedNodes& nodes);

/// (p * mu)(y_i) with p(x) = exp(-|x|)/2; the diagonal term counted once.
std::vector<double> conv_p(const WeightedNodes& nodes);

/// (1/2) sum_j sign(y_i - y_j) exp(-|y_i - y_j|) w_j, i.e. -(p' * mu)(y_i),
/// with sign(0) = 0.
std::vector<double> conv_dp(const WeightedNodes& nodes);

/// Both convolutions from a single pair of scans.
struct Convolutions {
    std::vector<double> p;
    std::vector<double> dp;
};
Convolutions convolve(const WeightedNodes& nodes);

/// Fourier multiplier 1/(1+k^2), i.e. (1 - d_xx)^{-1} on the torus.
EulerianField helmholtz_inverse(const EulerianField& field);
/// Fourier multiplier ik/(1+k^2), i.e. d_x (1 - d_xx)^{-1}.
EulerianField helmholtz_derivative(const EulerianField& field);

std::vector<double> helmholtz_inverse(std::span<const double> u, const Grid1D& grid);
std::vector<double> helmholtz_derivative(std::span<const double> u, const Grid1D& grid);

}  // namespace chlab::kernel
