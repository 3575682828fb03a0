#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "chlab/besov.hpp"
#include "chlab/equations.hpp"
#include "chlab/fields.hpp"

namespace chlab {

/// One RK4 step of u_t = -A(u) u_x + F(u) (and the eta equation for 2CH)
/// with spectral derivatives and 2/3-rule dealiasing. Throws NonFiniteError
/// when the spectrum blows up.
EulerianField eulerian_step(const EquationSpec& spec, const EulerianField& field, double dt);

/// Fixed steps of T/ceil(T/dt). Keeps every `stride`-th state plus the
/// first and the last (stride 0 keeps only those two).
std::vector<EulerianField> eulerian_integrate(const EquationSpec& spec, const EulerianField& field, double dt,
                                              double T, std::size_t stride = 0);

/// Values of a periodic field on a uniform lattice of time levels.
struct SpaceTimeField {
    Grid1D grid;
    double dt = 0.0;                        // spacing of the time levels
    std::vector<std::vector<double>> levels;  // levels[m] sampled at t = m*dt

    std::size_t steps() const noexcept { return levels.empty() ? 0 : levels.size() - 1; }
};

/// Solves f_t + v f_x = g, f(0) = f0, level by level: the foot of each
/// characteristic through (t_m, x_j) is traced back to t_{m-1} with RK4 on
/// dx/dt = v while g is accumulated along the same path. Off-lattice values
/// use cubic Hermite in space (spectral slopes) and cubic Lagrange in time.
/// Needs at least three time steps.
SpaceTimeField transport_solve(const SpaceTimeField& velocity, const SpaceTimeField& source,
                               std::span<const double> f0);

struct PicardConfig {
    double T = 0.0;            // 0: use suggested_T
    std::size_t time_steps = 64;
    std::size_t n_max = 40;
    double tol = 1e-8;
    double p = 2.0;
    double C_cal = 0.5;
};

struct PicardReport {
    std::size_t iterations = 0;        // index n of the last iterate u^n
    std::vector<double> increments;    // sup_t ||u^{n+1} - u^n||_{B^{1/p}_{p,1}}, n = 0, 1, ...
    std::vector<double> high_norms;    // sup_t ||u^n||_{B^{1+1/p}_{p,1}}, n = 1, 2, ...
    bool converged = false;
    double T = 0.0;
    EulerianField final_field;         // last iterate at t = T
    SpaceTimeField path;               // last iterate on the whole lattice
};

/// Iterates u^{n+1}_t + A(u^n) u^{n+1}_x = F(u^n), u^{n+1}(0) = u0, from
/// u^0 = 0 on [0, T]. Scalar families only.
PicardReport picard_iterate(const EquationSpec& spec, const EulerianField& u0, const PicardConfig& config);

struct TransportAuditOptions {
    double velocity_amplitude = 0.5;
    double T = 1.0;
    std::size_t time_steps = 64;
    std::vector<double> thetas{0.5, 1.0};
    double p = 2.0;
    double r = 1.0;
};

/// Empirical constant of ||f(t)||_{B^theta} <= ||f0||_{B^theta} exp(C V(t))
/// with V(t) = int_0^t ||v_x||_inf + ||v_x||_{B^{1/p}_{p,inf}} for a steady
/// Gaussian velocity and g = 0, maximised over the corpus and time levels.
std::vector<besov::AuditRow> transport_audit(std::span<const std::vector<double>> corpus,
                                             const besov::FilterBank& bank, const TransportAuditOptions& opts);

}  // namespace chlab
