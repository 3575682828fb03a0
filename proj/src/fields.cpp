#include "chlab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chlab/error.hpp"
#include "chlab/fft.hpp"
#include "chlab/interpolation.hpp"

namespace chlab {

namespace {

void check_finite(std::span<const double> v, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw NonFiniteError(std::string("non-finite entry in ") + name, i);
    }
}

void check_size(std::size_t got, std::size_t want, const char* name) {
    if (got != want) {
        throw InvalidArgument(std::string(name) + " has length " + std::to_string(got) + ", expected " +
                              std::to_string(want));
    }
}

std::vector<double> differentiate(std::span<const double> u, const Grid1D& grid, Derivative d) {
    return d == Derivative::Spectral ? spectral::derivative(u, grid) : spectral::centered_difference(u, grid);
}

}  // namespace

void EulerianField::validate() const {
    check_size(u.size(), grid.size(), "u");
    check_finite(u, "u");
    if (eta) {
        check_size(eta->size(), grid.size(), "eta");
        check_finite(*eta, "eta");
    }
}

void LagrangianState::validate() const {
    const std::size_t n = grid.size();
    check_size(xi.size(), n, "xi");
    check_size(y.size(), n, "y");
    check_size(U.size(), n, "U");
    check_size(y_xi.size(), n, "y_xi");
    check_size(U_xi.size(), n, "U_xi");
    check_finite(y, "y");
    check_finite(U, "U");
    check_finite(y_xi, "y_xi");
    check_finite(U_xi, "U_xi");
    if (V) {
        check_size(V->size(), n, "V");
        check_finite(*V, "V");
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(y[i + 1] > y[i])) {
            throw BreakdownError("flow map lost strict monotonicity", t, xi[i], y_xi[i]);
        }
    }
    if (grid.periodic() && !(y.front() + grid.length() > y.back())) {
        throw BreakdownError("flow map lost strict monotonicity across the periodic seam", t, xi.back(),
                             y_xi.back());
    }
    const auto it = std::min_element(y_xi.begin(), y_xi.end());
    if (!(*it > 0.0)) {
        const auto i = static_cast<std::size_t>(std::distance(y_xi.begin(), it));
        throw BreakdownError("y_xi is not positive", t, xi[i], *it);
    }
}

double lp_norm(std::span<const double> f, double dx, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("p must satisfy 1 <= p < inf");
    double acc = 0.0;
    if (p == 2.0) {
        for (double v : f) acc += v * v;
        return std::sqrt(acc * dx);
    }
    if (p == 1.0) {
        for (double v : f) acc += std::abs(v);
        return acc * dx;
    }
    // Scale by the max to keep pow() well-conditioned for large p.
    const double m = sup_norm(f);
    if (m == 0.0) return 0.0;
    for (double v : f) acc += std::pow(std::abs(v) / m, p);
    return m * std::pow(acc * dx, 1.0 / p);
}

double sup_norm(std::span<const double> f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

NormReport norms_of(std::span<const double> f, std::span<const double> df, double dx, double p) {
    NormReport r;
    r.p = p;
    r.lp = lp_norm(f, dx, p);
    const double dlp = lp_norm(df, dx, p);
    r.w1p = r.lp == 0.0 && dlp == 0.0 ? 0.0 : std::pow(std::pow(r.lp, p) + std::pow(dlp, p), 1.0 / p);
    if (p == 1.0) r.w1p = r.lp + dlp;
    r.w1inf = std::max(sup_norm(f), sup_norm(df));
    return r;
}

EulerianField sample_function(const Grid1D& grid, const std::function<double(double)>& f) {
    EulerianField field{grid, std::vector<double>(grid.size()), std::nullopt, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = f(grid.x(i));
        if (!std::isfinite(v)) throw NonFiniteError("sampled function is not finite", i);
        field.u[i] = v;
    }
    return field;
}

NormReport norms(const EulerianField& field, double p, Derivative d) {
    field.validate();
    const auto ux = differentiate(field.u, field.grid, d);
    return norms_of(field.u, ux, field.grid.dx(), p);
}

NormReport norms(const LagrangianState& state, double p) {
    return norms_of(state.U, state.U_xi, state.grid.dx(), p);
}

LagrangianState to_lagrangian(const EulerianField& field, Derivative d) {
    field.validate();
    LagrangianState s{field.grid, field.grid.points(), {}, field.u, {}, {}, field.eta, field.t};
    s.y = s.xi;
    s.y_xi.assign(field.grid.size(), 1.0);
    s.U_xi = differentiate(field.u, field.grid, d);
    return s;
}

EulerianField push_forward(const LagrangianState& state, const Grid1D& grid) {
    state.validate();
    if (!state.grid.periodic()) throw InvalidArgument("push_forward requires a periodic label grid");
    const interp::FlowMapInverse inverse(state.y, state.y_xi, state.grid.dx(), state.grid.length());

    std::optional<std::vector<double>> V_xi;
    if (state.V) V_xi = spectral::centered_difference(*state.V, state.grid);

    EulerianField out{grid, std::vector<double>(grid.size()), std::nullopt, state.t};
    if (state.V) out.eta.emplace(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto loc = inverse.locate(grid.x(j));
        out.u[j] = inverse.evaluate(loc, state.U, state.U_xi);
        if (state.V) (*out.eta)[j] = inverse.evaluate(loc, *state.V, *V_xi);
    }
    return out;
}

}  // namespace chlab
