#include "chlab/lagrangian_solver.hpp"

#include <algorithm>
#include <cmath>

#include "chlab/besov.hpp"
#include "chlab/error.hpp"

namespace chlab {

void SolverConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("solver.dt must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("solver.T must be positive");
    if (!(theta_min > 0.0 && theta_min < 0.5)) throw InvalidArgument("solver.theta_min must lie in (0, 1/2)");
    if (!(C_cal > 0.0)) throw InvalidArgument("solver.C_cal must be positive");
    if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("solver.p must satisfy 1 <= p < inf");
}

double suggested_T(const EquationSpec& spec, const EulerianField& u0, double C_cal, double p) {
    u0.validate();
    const besov::FilterBank bank(u0.grid);
    const double norm = besov::critical_norm(u0.u, p, bank);
    return C_cal / (std::pow(norm, spec.degree + 1) + 1.0);
}

namespace {

LagrangianState advance(const LagrangianState& s, const LagrangianIncrement& k, double h) {
    LagrangianState out = s;
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        out.y[i] += h * k.y[i];
        out.y_xi[i] += h * k.y_xi[i];
        out.U[i] += h * k.U[i];
        out.U_xi[i] += h * k.U_xi[i];
    }
    if (out.V) {
        for (std::size_t i = 0; i < n; ++i) (*out.V)[i] += h * (*k.V)[i];
    }
    out.t = s.t + h;
    return out;
}

void check_floor(const LagrangianState& s, double theta_min) {
    const auto it = std::min_element(s.y_xi.begin(), s.y_xi.end());
    if (theta_min > 0.0 && *it < theta_min) {
        const auto i = static_cast<std::size_t>(std::distance(s.y_xi.begin(), it));
        throw BreakdownError("y_xi fell below the Jacobian floor", s.t, s.xi[i], *it);
    }
}

}  // namespace

LagrangianState step_rk4(const EquationSpec& spec, const LagrangianState& state, double dt,
                         const LagrangianOptions& opts) {
    const auto k1 = rhs_lagrangian(spec, state, opts);
    const auto k2 = rhs_lagrangian(spec, advance(state, k1, 0.5 * dt), opts);
    const auto k3 = rhs_lagrangian(spec, advance(state, k2, 0.5 * dt), opts);
    const auto k4 = rhs_lagrangian(spec, advance(state, k3, dt), opts);

    LagrangianState out = state;
    const std::size_t n = state.size();
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.y[i] += w * (k1.y[i] + 2.0 * k2.y[i] + 2.0 * k3.y[i] + k4.y[i]);
        out.y_xi[i] += w * (k1.y_xi[i] + 2.0 * k2.y_xi[i] + 2.0 * k3.y_xi[i] + k4.y_xi[i]);
        out.U[i] += w * (k1.U[i] + 2.0 * k2.U[i] + 2.0 * k3.U[i] + k4.U[i]);
        out.U_xi[i] += w * (k1.U_xi[i] + 2.0 * k2.U_xi[i] + 2.0 * k3.U_xi[i] + k4.U_xi[i]);
    }
    if (out.V) {
        auto& V = *out.V;
        for (std::size_t i = 0; i < n; ++i) {
            V[i] += w * ((*k1.V)[i] + 2.0 * (*k2.V)[i] + 2.0 * (*k3.V)[i] + (*k4.V)[i]);
        }
    }
    out.t = state.t + dt;
    out.validate();
    check_floor(out, opts.theta_min);
    return out;
}

StepDiagnostics diagnose(const LagrangianState& s, double p) {
    StepDiagnostics d;
    d.t = s.t;
    const auto [mn, mx] = std::minmax_element(s.y_xi.begin(), s.y_xi.end());
    d.min_y_xi = *mn;
    d.max_y_xi = *mx;
    d.max_abs_U_xi = sup_norm(s.U_xi);
    const double h = s.grid.dx();
    double e = 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        e += s.U[i] * s.U[i] * s.y_xi[i] + s.U_xi[i] * s.U_xi[i] / s.y_xi[i];
        m += s.U[i] * s.y_xi[i];
    }
    d.energy = e * h;
    d.momentum = m * h;
    d.norms = norms(s, p);
    return d;
}

Trajectory integrate(const EquationSpec& spec, const LagrangianState& state0, const SolverConfig& config) {
    config.validate();
    state0.validate();

    Trajectory traj;
    traj.snapshots.push_back(state0);
    const LagrangianOptions opts{config.theta_min, config.quadrature};

    LagrangianState state = state0;
    const double t_end = state0.t + config.T;
    std::size_t step = 0;
    while (state.t < t_end - 1e-12 * std::max(1.0, t_end)) {
        if (step >= config.max_steps) break;
        const double dt = std::min(config.dt, t_end - state.t);
        try {
            state = step_rk4(spec, state, dt, opts);
        } catch (const BreakdownError& e) {
            traj.breakdown = BreakdownInfo{e.time(), e.location(), e.min_y_xi(), e.what()};
            break;
        }
        ++step;
        traj.diagnostics.push_back(diagnose(state, config.p));
        if (!traj.left_guaranteed_regime_at && traj.diagnostics.back().min_y_xi < 0.5) {
            traj.left_guaranteed_regime_at = state.t;
        }
        if (config.snapshot_stride > 0 && step % config.snapshot_stride == 0) traj.snapshots.push_back(state);
    }
    if (traj.snapshots.back().t != state.t) traj.snapshots.push_back(state);
    return traj;
}

}  // namespace chlab
