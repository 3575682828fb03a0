#include "chlab/equations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chlab/error.hpp"
#include "chlab/fft.hpp"
#include "chlab/kernel.hpp"

namespace chlab {

EquationSpec EquationSpec::camassa_holm() { return {Family::CamassaHolm, 1, std::nullopt}; }

EquationSpec EquationSpec::novikov() { return {Family::Novikov, 2, std::nullopt}; }

EquationSpec EquationSpec::two_component() { return {Family::TwoComponentCH, 1, Affine{1.0, 1.0}}; }

EquationSpec EquationSpec::from_tag(std::string_view tag) {
    if (tag == "ch") return camassa_holm();
    if (tag == "novikov") return novikov();
    if (tag == "2ch") return two_component();
    throw InvalidArgument("unknown equation family '" + std::string(tag) + "' (expected ch, novikov or 2ch)");
}

std::string EquationSpec::tag() const {
    switch (family) {
        case Family::CamassaHolm: return "ch";
        case Family::Novikov: return "novikov";
        case Family::TwoComponentCH: return "2ch";
    }
    return "?";
}

namespace {

void check_family(const EquationSpec& spec, bool has_eta) {
    if (spec.has_density() != has_eta) {
        throw InvalidArgument(spec.has_density() ? "2ch requires an eta component"
                                                 : "eta component given for a scalar family");
    }
}

std::vector<double> truncate(std::span<const double> v, bool on) {
    return on ? spectral::dealias(v) : std::vector<double>(v.begin(), v.end());
}

}  // namespace

EulerianRhs rhs_eulerian(const EquationSpec& spec, const EulerianField& field, const EulerianOptions& opts) {
    field.validate();
    check_family(spec, field.eta.has_value());
    const Grid1D& grid = field.grid;
    const std::size_t n = grid.size();
    const bool dealias = opts.dealias;

    const auto u = truncate(field.u, dealias);
    const auto ux = spectral::derivative(u, grid);

    std::vector<double> g(n);
    std::vector<double> h;
    std::optional<std::vector<double>> eta;
    if (spec.has_density()) eta = truncate(*field.eta, dealias);

    switch (spec.family) {
        case Family::CamassaHolm:
            for (std::size_t i = 0; i < n; ++i) g[i] = u[i] * u[i] + 0.5 * ux[i] * ux[i];
            break;
        case Family::Novikov:
            h.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                g[i] = 1.5 * u[i] * ux[i] * ux[i] + u[i] * u[i] * u[i];
                h[i] = 0.5 * ux[i] * ux[i] * ux[i];
            }
            break;
        case Family::TwoComponentCH:
            for (std::size_t i = 0; i < n; ++i) {
                const double e = (*eta)[i];
                g[i] = u[i] * u[i] + 0.5 * ux[i] * ux[i] + 0.5 * e * e + e;
            }
            break;
    }

    EulerianRhs out;
    out.forcing = kernel::helmholtz_derivative(g, grid);
    for (double& v : out.forcing) v = -v;
    if (!h.empty()) {
        const auto ph = kernel::helmholtz_inverse(h, grid);
        for (std::size_t i = 0; i < n; ++i) out.forcing[i] -= ph[i];
    }

    out.u_t.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.u_t[i] = -spec.transport(u[i]) * ux[i] + out.forcing[i];
    if (dealias) out.u_t = spectral::dealias(out.u_t);

    if (eta) {
        const auto eta_x = spectral::derivative(*eta, grid);
        std::vector<double> et(n);
        for (std::size_t i = 0; i < n; ++i) {
            et[i] = -spec.transport(u[i]) * eta_x[i] - spec.transport_slope(u[i]) * ux[i] * (*spec.h)((*eta)[i]);
        }
        out.eta_t = dealias ? spectral::dealias(et) : std::move(et);
    }
    return out;
}

namespace {

struct Nonlocal {
    std::vector<double> p;   // (p * f)(y_i)
    std::vector<double> dp;  // -(p' * f)(y_i)
};

// Nonlocal terms of a label-space density omega (per unit label). The
// corrected rule removes the leading Euler-Maclaurin error generated by the
// kink of exp(-|y(xi) - y(eta)|) at eta = xi:
//   p-part:  (h^2/12) y_xi omega,   dp-part: (h^2/12) omega_xi.
Nonlocal nonlocal_terms(const LagrangianState& s, std::span<const double> omega, Quadrature q) {
    const std::size_t n = s.size();
    const double h = s.grid.dx();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = omega[i] * h;
    auto c = kernel::convolve(kernel::WeightedNodes(s.y, w));
    if (q == Quadrature::CorrectedTrapezoid) {
        const double c12 = h * h / 12.0;
        const double inv2h = 0.5 / h;
        for (std::size_t i = 0; i < n; ++i) {
            const double domega = (omega[(i + 1) % n] - omega[(i + n - 1) % n]) * inv2h;
            c.p[i] -= c12 * s.y_xi[i] * omega[i];
            c.dp[i] -= c12 * domega;
        }
    }
    return {std::move(c.p), std::move(c.dp)};
}

}  // namespace

LagrangianIncrement rhs_lagrangian(const EquationSpec& spec, const LagrangianState& state,
                                   const LagrangianOptions& opts) {
    state.validate();
    check_family(spec, state.V.has_value());
    if (opts.theta_min > 0.0) {
        const auto it = std::min_element(state.y_xi.begin(), state.y_xi.end());
        if (*it < opts.theta_min) {
            const auto i = static_cast<std::size_t>(std::distance(state.y_xi.begin(), it));
            throw BreakdownError("y_xi fell below the Jacobian floor", state.t, state.xi[i], *it);
        }
    }

    const std::size_t n = state.size();
    const auto& U = state.U;
    const auto& Ux = state.U_xi;
    const auto& yx = state.y_xi;

    LagrangianIncrement inc;
    inc.y.resize(n);
    inc.y_xi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        inc.y[i] = spec.transport(U[i]);
        inc.y_xi[i] = spec.transport_slope(U[i]) * Ux[i];
    }

    // Densities in label space: f(x) dx = f(U, U_xi/y_xi) y_xi d(eta).
    std::vector<double> omega(n);
    std::vector<double> omega_h;
    switch (spec.family) {
        case Family::CamassaHolm:
            for (std::size_t i = 0; i < n; ++i) omega[i] = U[i] * U[i] * yx[i] + 0.5 * Ux[i] * Ux[i] / yx[i];
            break;
        case Family::Novikov:
            omega_h.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double ux = Ux[i] / yx[i];
                omega[i] = (1.5 * U[i] * ux * ux + U[i] * U[i] * U[i]) * yx[i];
                omega_h[i] = 0.5 * ux * ux * ux * yx[i];
            }
            break;
        case Family::TwoComponentCH:
            for (std::size_t i = 0; i < n; ++i) {
                const double v = (*state.V)[i];
                omega[i] = (U[i] * U[i] + 0.5 * v * v + v) * yx[i] + 0.5 * Ux[i] * Ux[i] / yx[i];
            }
            break;
    }

    const auto g = nonlocal_terms(state, omega, opts.quadrature);
    inc.U.resize(n);
    inc.U_xi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // F o y = -(p' * g)(y);  (F o y)_xi = y_xi (g - p * g)(y)
        inc.U[i] = g.dp[i];
        inc.U_xi[i] = omega[i] - yx[i] * g.p[i];
    }
    if (!omega_h.empty()) {
        // Novikov: extra -(p * h) in F, hence -(p' * h) y_xi in F_xi.
        const auto hh = nonlocal_terms(state, omega_h, opts.quadrature);
        for (std::size_t i = 0; i < n; ++i) {
            inc.U[i] -= hh.p[i];
            inc.U_xi[i] += yx[i] * hh.dp[i];
        }
    }
    if (state.V) {
        std::vector<double> dV(n);
        for (std::size_t i = 0; i < n; ++i) {
            dV[i] = -spec.transport_slope(U[i]) * (Ux[i] / yx[i]) * (*spec.h)((*state.V)[i]);
        }
        inc.V = std::move(dV);
    }
    return inc;
}

}  // namespace chlab
