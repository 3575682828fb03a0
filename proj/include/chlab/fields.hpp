#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "chlab/grid.hpp"

namespace chlab {

/// Sampled solution u (and eta = rho - 1 for the two-component system).
struct EulerianField {
    Grid1D grid;
    std::vector<double> u;
    std::optional<std::vector<double>> eta;
    double t = 0.0;

    /// Throws on size mismatch or non-finite entries.
    void validate() const;
};

/// Flow map y(t, xi) and the pulled-back solution U = u o y with the
/// xi-derivatives that the Lagrangian system evolves alongside.
struct LagrangianState {
    Grid1D grid;  // label grid; xi[i] == grid.x(i)
    std::vector<double> xi;
    std::vector<double> y;
    std::vector<double> U;
    std::vector<double> y_xi;
    std::vector<double> U_xi;
    std::optional<std::vector<double>> V;
    double t = 0.0;

    std::size_t size() const noexcept { return xi.size(); }

    /// Sizes, finiteness, strict monotonicity of y (across the periodic seam
    /// too) and y_xi > 0. Throws BreakdownError on the geometric checks.
    void validate() const;
};

struct NormReport {
    double lp = 0.0;     // ||f||_{L^p}
    double w1p = 0.0;    // (||f||_p^p + ||f'||_p^p)^{1/p}
    double w1inf = 0.0;  // max(||f||_inf, ||f'||_inf)
    double p = 2.0;

    /// Norm of W^{1,inf} cap W^{1,p}.
    double intersection() const noexcept { return w1p + w1inf; }
};

enum class Derivative { Spectral, FiniteDifference };

/// Trapezoid L^p norm of periodic samples.
double lp_norm(std::span<const double> f, double dx, double p);
double sup_norm(std::span<const double> f);

/// Norms of samples `f` with derivative samples `df`.
NormReport norms_of(std::span<const double> f, std::span<const double> df, double dx, double p);

EulerianField sample_function(const Grid1D& grid, const std::function<double(double)>& f);

NormReport norms(const EulerianField& field, double p, Derivative d = Derivative::Spectral);
/// Norms of U in the label variable, using the stored U_xi.
NormReport norms(const LagrangianState& state, double p);

LagrangianState to_lagrangian(const EulerianField& field, Derivative d = Derivative::Spectral);

/// Resamples the state onto an Eulerian grid: inverts the flow map with a
/// monotone cubic in xi and evaluates U by cubic Hermite interpolation.
EulerianField push_forward(const LagrangianState& state, const Grid1D& grid);

}  // namespace chlab
