#include "chlab/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "chlab/error.hpp"
#include "chlab/fft.hpp"
#include "chlab/interpolation.hpp"
#include "chlab/lagrangian_solver.hpp"

namespace chlab {

namespace {

void axpy(std::vector<double>& out, std::span<const double> base, std::span<const double> k, double h) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = base[i] + h * k[i];
}

EulerianField stage(const EulerianField& f, const EulerianRhs& k, double h) {
    EulerianField out = f;
    axpy(out.u, f.u, k.u_t, h);
    if (f.eta) axpy(*out.eta, *f.eta, *k.eta_t, h);
    out.t = f.t + h;
    return out;
}

void check_finite(std::span<const double> v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw NonFiniteError(what, i);
    }
}

}  // namespace

EulerianField eulerian_step(const EquationSpec& spec, const EulerianField& field, double dt) {
    if (!field.grid.periodic()) throw InvalidArgument("the pseudospectral reference needs a periodic grid");
    const EulerianOptions opts{true};
    const auto k1 = rhs_eulerian(spec, field, opts);
    const auto k2 = rhs_eulerian(spec, stage(field, k1, 0.5 * dt), opts);
    const auto k3 = rhs_eulerian(spec, stage(field, k2, 0.5 * dt), opts);
    const auto k4 = rhs_eulerian(spec, stage(field, k3, dt), opts);

    EulerianField out = field;
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < out.u.size(); ++i) {
        out.u[i] += w * (k1.u_t[i] + 2.0 * k2.u_t[i] + 2.0 * k3.u_t[i] + k4.u_t[i]);
    }
    if (out.eta) {
        auto& e = *out.eta;
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] += w * ((*k1.eta_t)[i] + 2.0 * (*k2.eta_t)[i] + 2.0 * (*k3.eta_t)[i] + (*k4.eta_t)[i]);
        }
        check_finite(e, "non-finite density after Eulerian step");
    }
    check_finite(out.u, "non-finite spectrum after Eulerian step");
    out.t = field.t + dt;
    return out;
}

std::vector<EulerianField> eulerian_integrate(const EquationSpec& spec, const EulerianField& field, double dt,
                                              double T, std::size_t stride) {
    if (!(dt > 0.0) || !(T >= 0.0)) throw InvalidArgument("Eulerian integration needs dt > 0 and T >= 0");
    field.validate();
    const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
    std::vector<EulerianField> out{field};
    if (steps == 0) return out;
    const double h = T / static_cast<double>(steps);
    EulerianField f = field;
    for (std::size_t n = 1; n <= steps; ++n) {
        f = eulerian_step(spec, f, h);
        if ((stride > 0 && n % stride == 0) || n == steps) out.push_back(f);
    }
    out.back().t = field.t + T;
    return out;
}

namespace {

// Periodic cubic Hermite sampler on the uniform grid.
class Sampler {
public:
    Sampler(const Grid1D& grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)), slopes_(spectral::derivative(values_, grid)) {}

    double operator()(double x) const {
        const std::size_t n = values_.size();
        const double u = (x - grid_.x(0)) / grid_.dx();
        const double fl = std::floor(u);
        const double s = u - fl;
        const auto nn = static_cast<long long>(n);
        long long i = static_cast<long long>(fl) % nn;
        if (i < 0) i += nn;
        const auto a = static_cast<std::size_t>(i);
        const std::size_t b = (a + 1) % n;
        return interp::hermite_cubic(s, grid_.dx(), values_[a], values_[b], slopes_[a], slopes_[b]);
    }

private:
    Grid1D grid_;
    std::vector<double> values_;
    std::vector<double> slopes_;
};

// Lagrange weights for the midpoint t_{m-1/2} from four consecutive levels
// starting at `first`.
std::vector<double> midpoint_level(const SpaceTimeField& f, std::size_t m) {
    const std::size_t M = f.steps();
    std::size_t first = 0;
    std::array<double, 4> w{};
    if (m == 1) {
        first = 0;
        w = {0.3125, 0.9375, -0.3125, 0.0625};
    } else if (m == M) {
        first = M - 3;
        w = {0.0625, -0.3125, 0.9375, 0.3125};
    } else {
        first = m - 2;
        w = {-0.0625, 0.5625, 0.5625, -0.0625};
    }
    std::vector<double> out(f.grid.size(), 0.0);
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& lv = f.levels[first + k];
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w[k] * lv[i];
    }
    return out;
}

void check_lattice(const SpaceTimeField& f, const Grid1D& grid, std::size_t steps, const char* name) {
    if (!(f.grid == grid)) throw InvalidArgument(std::string(name) + " lives on a different grid");
    if (f.steps() != steps) throw InvalidArgument(std::string(name) + " has a different number of time levels");
    for (const auto& lv : f.levels) {
        if (lv.size() != grid.size()) throw InvalidArgument(std::string(name) + " level has the wrong size");
    }
}

}  // namespace

SpaceTimeField transport_solve(const SpaceTimeField& velocity, const SpaceTimeField& source,
                               std::span<const double> f0) {
    const Grid1D& grid = velocity.grid;
    const std::size_t M = velocity.steps();
    if (M < 3) throw InvalidArgument("transport_solve needs at least three time steps");
    if (!(velocity.dt > 0.0)) throw InvalidArgument("transport_solve needs a positive time step");
    check_lattice(source, grid, M, "source");
    if (f0.size() != grid.size()) throw InvalidArgument("initial datum has the wrong size");

    const std::size_t n = grid.size();
    const double tau = velocity.dt;
    SpaceTimeField out{grid, tau, {}};
    out.levels.reserve(M + 1);
    out.levels.emplace_back(f0.begin(), f0.end());

    Sampler v_hi(grid, velocity.levels[0]);
    Sampler g_hi(grid, source.levels[0]);
    for (std::size_t m = 1; m <= M; ++m) {
        Sampler v_lo = std::move(v_hi);
        Sampler g_lo = std::move(g_hi);
        v_hi = Sampler(grid, velocity.levels[m]);
        g_hi = Sampler(grid, source.levels[m]);
        const Sampler v_mid(grid, midpoint_level(velocity, m));
        const Sampler g_mid(grid, midpoint_level(source, m));
        const Sampler f_prev(grid, out.levels[m - 1]);

        std::vector<double> next(n);
        const double h = -tau;
        for (std::size_t j = 0; j < n; ++j) {
            const double x0 = grid.x(j);
            const double k1 = v_hi(x0);
            const double q1 = g_hi(x0);
            const double x2 = x0 + 0.5 * h * k1;
            const double k2 = v_mid(x2);
            const double q2 = g_mid(x2);
            const double x3 = x0 + 0.5 * h * k2;
            const double k3 = v_mid(x3);
            const double q3 = g_mid(x3);
            const double x4 = x0 + h * k3;
            const double k4 = v_lo(x4);
            const double q4 = g_lo(x4);
            const double foot = x0 + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            const double gain = -h / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
            next[j] = f_prev(foot) + gain;
        }
        check_finite(next, "non-finite value in transport solve");
        out.levels.push_back(std::move(next));
    }
    return out;
}

namespace {

SpaceTimeField map_levels(const SpaceTimeField& f, const auto& fn) {
    SpaceTimeField out{f.grid, f.dt, {}};
    out.levels.reserve(f.levels.size());
    for (const auto& lv : f.levels) out.levels.push_back(fn(lv));
    return out;
}

double sup_besov_distance(const SpaceTimeField& a, const SpaceTimeField& b, double s, double p,
                          const besov::FilterBank& bank) {
    double mx = 0.0;
    std::vector<double> d(a.grid.size());
    for (std::size_t m = 0; m < a.levels.size(); ++m) {
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.levels[m][i] - b.levels[m][i];
        mx = std::max(mx, besov::besov_norm(d, s, p, 1.0, bank).norm);
    }
    return mx;
}

}  // namespace

PicardReport picard_iterate(const EquationSpec& spec, const EulerianField& u0, const PicardConfig& config) {
    if (spec.has_density()) throw InvalidArgument("picard_iterate supports scalar families only");
    u0.validate();
    if (config.n_max == 0) throw InvalidArgument("picard.n_max must be positive");
    if (!(config.tol > 0.0)) throw InvalidArgument("picard.tol must be positive");
    if (config.time_steps < 3) throw InvalidArgument("picard.time_steps must be at least 3");
    if (!(config.p >= 1.0) || !std::isfinite(config.p)) throw InvalidArgument("picard.p must satisfy 1 <= p < inf");

    const Grid1D& grid = u0.grid;
    const double T = config.T > 0.0 ? config.T : suggested_T(spec, u0, config.C_cal, config.p);
    const double tau = T / static_cast<double>(config.time_steps);
    const besov::FilterBank bank(grid);

    std::size_t iterations = 0;
    std::vector<double> increments;
    std::vector<double> high_norms;
    bool converged = false;
    SpaceTimeField current{grid, tau, std::vector<std::vector<double>>(config.time_steps + 1,
                                                                        std::vector<double>(grid.size(), 0.0))};

    for (std::size_t n = 0; n < config.n_max; ++n) {
        const auto velocity = map_levels(current, [&](const std::vector<double>& u) {
            std::vector<double> a(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) a[i] = spec.transport(u[i]);
            return a;
        });
        const auto source = map_levels(current, [&](const std::vector<double>& u) {
            return rhs_eulerian(spec, EulerianField{grid, u, std::nullopt, 0.0}).forcing;
        });
        auto next = transport_solve(velocity, source, u0.u);

        increments.push_back(sup_besov_distance(next, current, 1.0 / config.p, config.p, bank));
        double high = 0.0;
        for (const auto& lv : next.levels) high = std::max(high, besov::critical_norm(lv, config.p, bank));
        high_norms.push_back(high);
        current = std::move(next);
        iterations = n + 1;
        if (increments.back() < config.tol) {
            converged = true;
            break;
        }
    }
    EulerianField final_field{grid, current.levels.back(), std::nullopt, u0.t + T};
    return PicardReport{iterations,           std::move(increments), std::move(high_norms), converged, T,
                        std::move(final_field), std::move(current)};
}

std::vector<besov::AuditRow> transport_audit(std::span<const std::vector<double>> corpus,
                                             const besov::FilterBank& bank, const TransportAuditOptions& opts) {
    if (opts.time_steps < 3 || !(opts.T > 0.0)) throw InvalidArgument("transport audit needs T > 0 and >= 3 steps");
    const Grid1D& grid = bank.grid();
    const double tau = opts.T / static_cast<double>(opts.time_steps);

    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = opts.velocity_amplitude * std::exp(-grid.x(i) * grid.x(i));
    const auto vx = spectral::derivative(v, grid);
    const double rate = sup_norm(vx) + besov::besov_norm(vx, 1.0 / opts.p, opts.p, besov::kInf, bank).norm;

    const SpaceTimeField velocity{grid, tau, std::vector<std::vector<double>>(opts.time_steps + 1, v)};
    const SpaceTimeField source{grid, tau, std::vector<std::vector<double>>(opts.time_steps + 1,
                                                                          std::vector<double>(grid.size(), 0.0))};

    std::vector<besov::AuditRow> rows;
    for (double theta : opts.thetas) {
        std::ostringstream ps;
        ps << "theta=" << theta << ";p=" << opts.p << ";r=";
        if (std::isinf(opts.r)) ps << "inf"; else ps << opts.r;
        rows.push_back({"transport", ps.str(), -std::numeric_limits<double>::infinity()});
    }
    for (const auto& f0 : corpus) {
        const auto f = transport_solve(velocity, source, f0);
        for (std::size_t k = 0; k < opts.thetas.size(); ++k) {
            const double n0 = besov::besov_norm(f0, opts.thetas[k], opts.p, opts.r, bank).norm;
            for (std::size_t m = 1; m < f.levels.size(); ++m) {
                const double nm = besov::besov_norm(f.levels[m], opts.thetas[k], opts.p, opts.r, bank).norm;
                const double V = rate * tau * static_cast<double>(m);
                rows[k].empirical_C = std::max(rows[k].empirical_C, std::log(nm / n0) / V);
            }
        }
    }
    return rows;
}

}  // namespace chlab
