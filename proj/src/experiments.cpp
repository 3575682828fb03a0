#include "chlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "chlab/besov.hpp"
#include "chlab/error.hpp"
#include "chlab/fft.hpp"
#include "chlab/peakon.hpp"

namespace chlab::experiments {

EulerianField make_field(const Profile& pr, const Grid1D& grid) {
    if (!std::isfinite(pr.amplitude)) throw InvalidArgument("initial.amplitude must be finite");
    if (!std::isfinite(pr.centre)) throw InvalidArgument("initial.centre must be finite");
    EulerianField f{grid, std::vector<double>(grid.size(), 0.0), std::nullopt, 0.0};
    if (pr.kind == "gaussian" || pr.kind == "bump") {
        if (!(pr.width > 0.0)) throw InvalidArgument("initial.width must be positive");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double z = (grid.x(i) - pr.centre) / pr.width;
            if (pr.kind == "gaussian") {
                f.u[i] = pr.amplitude * std::exp(-z * z);
            } else if (std::abs(z) < 1.0) {
                f.u[i] = pr.amplitude * std::exp(1.0 - 1.0 / (1.0 - z * z));
            }
        }
    } else if (pr.kind == "peakon" || pr.kind == "multipeakon") {
        if (!(pr.delta > 0.0)) throw InvalidArgument("initial.delta must be positive for peaked profiles");
        peakon::PeakonEnsemble e;
        if (pr.kind == "peakon") {
            e.p = {pr.amplitude};
            e.q = {pr.centre};
        } else {
            if (pr.p.empty() || pr.p.size() != pr.q.size()) {
                throw InvalidArgument("initial.p and initial.q must be non-empty and of equal length");
            }
            e.p = pr.p;
            e.q = pr.q;
        }
        try {
            e.validate();
        } catch (const std::exception& ex) {
            throw InvalidArgument(std::string("initial.q: ") + ex.what());
        }
        f = peakon::mollify(peakon::sample_field(e, grid), pr.delta);
    } else {
        throw InvalidArgument("initial.kind '" + pr.kind + "' is not one of gaussian, bump, peakon, multipeakon");
    }
    return f;
}

namespace {

EulerianField with_density(const EquationSpec& spec, EulerianField f) {
    if (spec.has_density() && !f.eta) f.eta = std::vector<double>(f.u.size(), 0.0);
    return f;
}

std::vector<double> difference(std::span<const double> a, std::span<const double> b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

Trajectory run_lagrangian(const EquationSpec& spec, const EulerianField& u0, SolverConfig cfg, double T,
                          std::size_t samples) {
    cfg.T = T;
    const auto steps = static_cast<std::size_t>(std::ceil(T / cfg.dt - 1e-9));
    cfg.snapshot_stride = std::max<std::size_t>(1, steps / std::max<std::size_t>(1, samples));
    auto state = to_lagrangian(u0);
    return integrate(spec, state, cfg);
}

}  // namespace

double intersection_distance(std::span<const double> f1, std::span<const double> df1, std::span<const double> f2,
                             std::span<const double> df2, double dx, double p) {
    const auto d = difference(f1, f2);
    const auto dd = difference(df1, df2);
    return norms_of(d, dd, dx, p).intersection();
}

double lagrangian_distance(const LagrangianState& a, const LagrangianState& b, double p) {
    if (a.size() != b.size()) throw InvalidArgument("states differ in size");
    const double h = a.grid.dx();
    return intersection_distance(a.U, a.U_xi, b.U, b.U_xi, h, p) + intersection_distance(a.y, a.y_xi, b.y, b.y_xi, h, p);
}

StabilityReport stability_experiment(const EquationSpec& spec, const EulerianField& u0,
                                     const EulerianField& perturbation, const std::vector<double>& eps_ladder,
                                     double T, const StabilityOptions& opts) {
    u0.validate();
    perturbation.validate();
    if (!(u0.grid == perturbation.grid)) throw InvalidArgument("perturbation lives on a different grid");
    if (eps_ladder.empty()) throw InvalidArgument("experiment.eps must not be empty");
    for (std::size_t i = 1; i < eps_ladder.size(); ++i) {
        if (!(eps_ladder[i] < eps_ladder[i - 1])) throw InvalidArgument("experiment.eps must be strictly decreasing");
    }
    if (!(T > 0.0)) throw InvalidArgument("experiment.T must be positive");
    const double p = opts.solver.p;
    const auto base = with_density(spec, u0);

    std::vector<EulerianField> data;
    for (double eps : eps_ladder) {
        EulerianField v = base;
        for (std::size_t i = 0; i < v.u.size(); ++i) v.u[i] += eps * perturbation.u[i];
        data.push_back(std::move(v));
    }

    auto reference = std::async(std::launch::async, run_lagrangian, spec, base, opts.solver, T, opts.samples);
    std::vector<std::future<Trajectory>> runs;
    for (const auto& d : data) {
        runs.push_back(std::async(std::launch::async, run_lagrangian, spec, d, opts.solver, T, opts.samples));
    }
    const Trajectory ref = reference.get();

    const Grid1D& grid = u0.grid;
    const besov::FilterBank bank(grid);
    StabilityReport report;
    report.p = p;
    report.T = T;
    for (std::size_t k = 0; k < eps_ladder.size(); ++k) {
        const Trajectory tr = runs[k].get();
        StabilityRow row;
        row.epsilon = eps_ladder[k];
        const auto du0 = difference(data[k].u, base.u);
        row.initial_besov = besov::critical_norm(du0, p, bank);
        row.initial_eulerian = intersection_distance(data[k].u, spectral::derivative(data[k].u, grid), base.u,
                                                     spectral::derivative(base.u, grid), grid.dx(), p);
        row.initial_lagrangian = lagrangian_distance(tr.snapshots.front(), ref.snapshots.front(), p);

        const std::size_t count = std::min(tr.snapshots.size(), ref.snapshots.size());
        double sup = 0.0;
        for (std::size_t m = 0; m < count; ++m) {
            const auto& a = tr.snapshots[m];
            const auto& b = ref.snapshots[m];
            const double d = lagrangian_distance(a, b, p);
            row.times.push_back(a.t);
            row.lagrangian.push_back(d);
            row.eulerian_lp.push_back(lp_norm(difference(push_forward(a, grid).u, push_forward(b, grid).u), grid.dx(), p));
            sup = std::max(sup, d);
        }
        row.rho = row.initial_lagrangian > 0.0 ? sup / row.initial_lagrangian : (sup > 0.0 ? besov::kInf : 1.0);
        row.rho_besov = row.initial_besov > 0.0 ? sup / row.initial_besov : (sup > 0.0 ? besov::kInf : 1.0);
        row.partial = tr.breakdown.has_value() || ref.breakdown.has_value();
        if (tr.breakdown) row.breakdown_time = tr.breakdown->t;
        else if (ref.breakdown) row.breakdown_time = ref.breakdown->t;
        report.partial = report.partial || row.partial;
        report.rows.push_back(std::move(row));
    }

    report.rho_min = besov::kInf;
    report.rho_max = 0.0;
    for (const auto& row : report.rows) {
        if (row.initial_lagrangian <= 0.0) continue;
        report.rho_min = std::min(report.rho_min, row.rho);
        report.rho_max = std::max(report.rho_max, row.rho);
    }
    if (report.rho_max > 0.0) {
        report.variation = report.rho_max / report.rho_min;
    } else {
        report.rho_min = 0.0;
        report.variation = 1.0;
    }
    return report;
}

SequenceRule sequence_rule_from_tag(const std::string& tag) {
    if (tag == "constant") return SequenceRule::Constant;
    if (tag == "amplitude") return SequenceRule::Amplitude;
    if (tag == "mollification") return SequenceRule::Mollification;
    throw InvalidArgument("experiment.rule '" + tag + "' is not one of constant, amplitude, mollification");
}

std::string tag(SequenceRule rule) {
    switch (rule) {
        case SequenceRule::Constant: return "constant";
        case SequenceRule::Amplitude: return "amplitude";
        case SequenceRule::Mollification: return "mollification";
    }
    return "?";
}

DependenceReport continuous_dependence_experiment(const EquationSpec& spec, const EulerianField& u0,
                                                  SequenceRule rule, double T, const DependenceOptions& opts) {
    u0.validate();
    if (!(T > 0.0)) throw InvalidArgument("experiment.T must be positive");
    if (opts.levels.empty()) throw InvalidArgument("experiment.levels must not be empty");
    if (rule == SequenceRule::Mollification && !(opts.delta0 > 0.0)) {
        throw InvalidArgument("experiment.delta0 must be positive");
    }
    const double p = opts.solver.p;
    const Grid1D& grid = u0.grid;
    const besov::FilterBank bank(grid);
    const auto base = with_density(spec, u0);

    std::vector<EulerianField> data;
    for (int m : opts.levels) {
        EulerianField v = base;
        switch (rule) {
            case SequenceRule::Constant: break;
            case SequenceRule::Amplitude:
                for (double& x : v.u) x *= 1.0 + std::ldexp(1.0, -m);
                break;
            case SequenceRule::Mollification: {
                const auto sm = peakon::mollify(v, opts.delta0 * std::ldexp(1.0, -m));
                v.u = sm.u;
                break;
            }
        }
        data.push_back(std::move(v));
    }

    auto reference = std::async(std::launch::async, run_lagrangian, spec, base, opts.solver, T, opts.samples);
    std::vector<std::future<Trajectory>> runs;
    for (const auto& d : data) {
        runs.push_back(std::async(std::launch::async, run_lagrangian, spec, d, opts.solver, T, opts.samples));
    }
    const Trajectory ref = reference.get();
    std::vector<EulerianField> ref_fields;
    for (const auto& s : ref.snapshots) ref_fields.push_back(push_forward(s, grid));

    DependenceReport report;
    report.p = p;
    report.T = T;
    report.rule = rule;
    const double s_high = 1.0 + 1.0 / p;
    const double s_low = 1.0 / p;
    for (std::size_t k = 0; k < data.size(); ++k) {
        const Trajectory tr = runs[k].get();
        DependenceRow row;
        row.m = opts.levels[k];
        row.initial_distance = besov::critical_norm(difference(data[k].u, base.u), p, bank);
        const std::size_t count = std::min(tr.snapshots.size(), ref_fields.size());
        for (std::size_t i = 0; i < count; ++i) {
            const auto u = push_forward(tr.snapshots[i], grid);
            const auto d = difference(u.u, ref_fields[i].u);
            const auto blocks = besov::block_lp_norms(d, bank, p);
            row.sup_high = std::max(row.sup_high, besov::aggregate(blocks, s_high, p, 1.0).norm);
            row.sup_low = std::max(row.sup_low, besov::aggregate(blocks, s_low, p, 1.0).norm);
            row.sup_norm_high = std::max(row.sup_norm_high, besov::critical_norm(u.u, p, bank));
        }
        row.partial = tr.breakdown.has_value() || ref.breakdown.has_value();
        report.rows.push_back(row);
    }

    std::vector<std::pair<double, double>> pts;
    for (const auto& r : report.rows) {
        if (r.initial_distance > 0.0 && r.sup_high > 0.0) pts.emplace_back(std::log(r.initial_distance), std::log(r.sup_high));
    }
    if (pts.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (const auto& [x, y] : pts) {
            mx += x;
            my += y;
        }
        mx /= static_cast<double>(pts.size());
        my /= static_cast<double>(pts.size());
        double sxy = 0.0, sxx = 0.0;
        for (const auto& [x, y] : pts) {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
        }
        if (sxx > 0.0) report.observed_rate = sxy / sxx;
    }
    return report;
}

W1InfReport w1inf_discontinuity_demo(double c, const std::vector<double>& eps_ladder, double T, double p) {
    if (!(c > 0.0)) throw InvalidArgument("experiment.c must be positive");
    if (!(T >= 0.0)) throw InvalidArgument("experiment.T must be nonnegative");
    if (!(p >= 1.0)) throw InvalidArgument("experiment.p must be at least 1");
    W1InfReport report{c, T, p, {}};
    const double dt = T > 0.0 ? T / std::ceil(T / 1e-2) : 1.0;
    for (double eps : eps_ladder) {
        if (!(eps >= 0.0)) throw InvalidArgument("experiment.eps entries must be nonnegative");
        const peakon::PeakonEnsemble a0{{c}, {0.0}, 0.0};
        const peakon::PeakonEnsemble b0{{c + eps}, {0.0}, 0.0};
        const auto a = T > 0.0 ? peakon::integrate(a0, dt, T).snapshots.back() : a0;
        const auto b = T > 0.0 ? peakon::integrate(b0, dt, T).snapshots.back() : b0;
        const auto d0 = peakon::ExponentialSum::difference(a0, b0);
        const auto d1 = peakon::ExponentialSum::difference(a, b);

        W1InfRow row;
        row.epsilon = eps;
        row.w1inf_initial = d0.w1inf_norm();
        row.w1inf_final = d1.w1inf_norm();
        row.lp_initial = d0.lp_norm(p);
        row.lp_final = d1.lp_norm(p);
        row.w1inf_ratio = row.w1inf_initial > 0.0 ? row.w1inf_final / row.w1inf_initial : 1.0;
        row.lp_ratio = row.lp_initial > 0.0 ? row.lp_final / row.lp_initial : 1.0;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace chlab::experiments
