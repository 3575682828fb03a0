#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chlab/equations.hpp"
#include "chlab/fields.hpp"

namespace chlab {

struct SolverConfig {
    double dt = 1e-3;
    double T = 1.0;
    double theta_min = 0.25;  // breakdown floor for y_xi
    double C_cal = 0.5;       // numerator of suggested_T
    std::size_t max_steps = 10'000'000;
    std::size_t snapshot_stride = 0;  // 0: keep only the initial and final states
    double p = 2.0;                   // integrability index for the recorded norms
    Quadrature quadrature = Quadrature::CorrectedTrapezoid;

    void validate() const;
};

/// Per-step record. The energy and momentum are the Lagrangian forms of
/// int (u^2 + u_x^2) dx and int u dx.
struct StepDiagnostics {
    double t = 0.0;
    double min_y_xi = 1.0;
    double max_y_xi = 1.0;
    double max_abs_U_xi = 0.0;
    double energy = 0.0;
    double momentum = 0.0;
    NormReport norms;
};

struct BreakdownInfo {
    double t = 0.0;
    double xi = 0.0;
    double min_y_xi = 0.0;
    std::string reason;
};

struct Trajectory {
    std::vector<LagrangianState> snapshots;
    std::vector<StepDiagnostics> diagnostics;  // one entry per accepted step
    std::optional<BreakdownInfo> breakdown;
    /// First time min y_xi dropped below 1/2, the lower end of the
    /// guaranteed Jacobian range.
    std::optional<double> left_guaranteed_regime_at;

    const LagrangianState& final_state() const { return snapshots.back(); }
    std::size_t steps() const noexcept { return diagnostics.size(); }
};

/// C_cal / (||u0||^{k+1}_{B^{1+1/p}_{p,1}} + 1).
double suggested_T(const EquationSpec& spec, const EulerianField& u0, double C_cal = 0.5, double p = 2.0);

/// One classical RK4 step of the semi-discrete Lagrangian system. Throws
/// BreakdownError if any stage leaves the admissible set.
LagrangianState step_rk4(const EquationSpec& spec, const LagrangianState& state, double dt,
                         const LagrangianOptions& opts = {});

/// Fixed-step integration to config.T (the last step is shortened to land
/// on T). Breakdown stops the run and is recorded, not thrown.
Trajectory integrate(const EquationSpec& spec, const LagrangianState& state0, const SolverConfig& config);

StepDiagnostics diagnose(const LagrangianState& state, double p);

}  // namespace chlab
