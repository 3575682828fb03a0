#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chlab/fields.hpp"

namespace chlab {

enum class Family { CamassaHolm, Novikov, TwoComponentCH };

/// h(v) = a*v + b.
struct Affine {
    double a = 1.0;
    double b = 1.0;
    double operator()(double v) const noexcept { return a * v + b; }
};

/// The pair (A, F) of  u_t + A(u) u_x = F(u)  for one of the three families.
///
///   CH:       A(u) = u,   F = -d_x (1-d_xx)^{-1} (u^2 + u_x^2/2)
///   Novikov:  A(u) = u^2, F = -(1-d_xx)^{-1} (d_x(3/2 u u_x^2 + u^3) + u_x^3/2)
///   2CH:      A(u) = u,   F = -d_x (1-d_xx)^{-1} (u^2 + u_x^2/2 + eta^2/2 + eta),
///             eta_t + u eta_x = -u_x h(eta),  h(eta) = 1 + eta
struct EquationSpec {
    Family family = Family::CamassaHolm;
    int degree = 1;  // k in the growth bound ||F(u)|| <= C(||u||^{k+1} + 1)
    std::optional<Affine> h;

    static EquationSpec camassa_holm();
    static EquationSpec novikov();
    static EquationSpec two_component();
    /// "ch" | "novikov" | "2ch"
    static EquationSpec from_tag(std::string_view tag);

    std::string tag() const;
    bool has_density() const noexcept { return family == Family::TwoComponentCH; }

    double transport(double u) const noexcept { return family == Family::Novikov ? u * u : u; }
    double transport_slope(double u) const noexcept { return family == Family::Novikov ? 2.0 * u : 1.0; }
};

struct EulerianRhs {
    std::vector<double> forcing;  // F(u)
    std::vector<double> u_t;      // -A(u) u_x + F(u)
    std::optional<std::vector<double>> eta_t;
};

struct EulerianOptions {
    bool dealias = false;  // 2/3 rule on inputs and products
};

EulerianRhs rhs_eulerian(const EquationSpec& spec, const EulerianField& field, const EulerianOptions& opts = {});

/// Time derivatives of every array of a LagrangianState.
struct LagrangianIncrement {
    std::vector<double> y;
    std::vector<double> y_xi;
    std::vector<double> U;
    std::vector<double> U_xi;
    std::optional<std::vector<double>> V;
};

enum class Quadrature {
    Trapezoid,           // plain trapezoid over the labels, second order
    CorrectedTrapezoid,  // adds the Euler-Maclaurin jump term at the kernel kink, fourth order
};

struct LagrangianOptions {
    double theta_min = 0.0;  // y_xi floor; 0 only demands positivity
    Quadrature quadrature = Quadrature::CorrectedTrapezoid;
};

/// Semi-discrete Lagrangian system: dy/dt = A(U), dy_xi/dt = A'(U) U_xi,
/// dU/dt = F(u) o y and dU_xi/dt = (F(u) o y)_xi, with the nonlocal terms
/// evaluated by kernel scans over the nodes y with label-space weights.
LagrangianIncrement rhs_lagrangian(const EquationSpec& spec, const LagrangianState& state,
                                   const LagrangianOptions& opts = {});

}  // namespace chlab
