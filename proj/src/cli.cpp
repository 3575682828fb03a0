#include "chlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "CLI11.hpp"
#include "chlab/besov.hpp"
#include "chlab/error.hpp"
#include "chlab/experiments.hpp"
#include "chlab/io.hpp"
#include "chlab/lagrangian_solver.hpp"
#include "chlab/peakon.hpp"
#include "chlab/reference.hpp"
#include "json.hpp"

#ifndef CHLAB_VERSION
#define CHLAB_VERSION "dev"
#endif

namespace chlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string version() { return CHLAB_VERSION; }

namespace {

json num(double v) {
    if (std::isfinite(v)) return v;
    return io::number(v);
}

json profile_json(const experiments::Profile& p) {
    return {{"kind", p.kind}, {"amplitude", p.amplitude}, {"centre", p.centre}, {"width", p.width},
            {"delta", p.delta}, {"p", p.p},                 {"q", p.q}};
}

json config_json(const config::RunConfig& c, double T_resolved) {
    const auto& s = c.solver;
    return {
        {"command", c.command},
        {"equation", c.equation},
        {"seed", c.seed},
        {"grid", {{"L", c.L}, {"N", c.N}}},
        {"output", {{"dir", c.out.string()}, {"states", c.write_states}}},
        {"initial", profile_json(c.initial)},
        {"solver",
         {{"dt", s.dt},
          {"T", num(T_resolved)},
          {"T_auto", c.T_auto},
          {"theta_min", s.theta_min},
          {"C_cal", s.C_cal},
          {"p", s.p},
          {"snapshot_stride", s.snapshot_stride},
          {"max_steps", s.max_steps},
          {"quadrature", s.quadrature == Quadrature::CorrectedTrapezoid ? "corrected" : "trapezoid"}}},
        {"picard", {{"n_max", c.picard.n_max}, {"tol", c.picard.tol}, {"time_steps", c.picard.time_steps}}},
        {"experiment",
         {{"eps", c.experiment.eps},
          {"perturbation", profile_json(c.experiment.perturbation)},
          {"rule", c.experiment.rule},
          {"levels", c.experiment.levels},
          {"delta0", c.experiment.delta0},
          {"samples", c.experiment.samples},
          {"c", c.experiment.c}}},
        {"audit",
         {{"corpus", c.audit.corpus}, {"log_epsilon", c.audit.log_epsilon}, {"transport", c.audit.transport}}},
        {"peakon", {{"M", c.peakon.M}, {"dt", c.peakon.dt}, {"T", c.peakon.T}, {"stride", c.peakon.stride}}},
    };
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Artifacts {
public:
    explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}

    template <class Writer>
    void write(const std::string& name, Writer&& w) {
        auto os = io::open_output(dir_ / name);
        w(os);
        if (!os) throw std::runtime_error("failed writing '" + (dir_ / name).string() + "'");
        files_.push_back(name);
    }

    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

struct Outcome {
    double T = 0.0;
    json results = json::object();
    json breakdown = nullptr;
};

EulerianField initial_field(const config::RunConfig& c, const EquationSpec& spec, const Grid1D& grid) {
    auto f = experiments::make_field(c.initial, grid);
    if (spec.has_density()) f.eta = std::vector<double>(grid.size(), 0.0);
    return f;
}

double horizon(const config::RunConfig& c, const EquationSpec& spec, const EulerianField& u0) {
    return c.T_auto ? suggested_T(spec, u0, c.solver.C_cal, c.solver.p) : c.solver.T;
}

json breakdown_json(const BreakdownInfo& b) {
    return {{"t", num(b.t)}, {"xi", num(b.xi)}, {"min_y_xi", num(b.min_y_xi)}, {"reason", b.reason}};
}

Outcome simulate(const config::RunConfig& c, Artifacts& art) {
    const auto spec = EquationSpec::from_tag(c.equation);
    const Grid1D grid(c.L, c.N);
    const auto u0 = initial_field(c, spec, grid);
    Outcome o;
    o.T = horizon(c, spec, u0);
    auto cfg = c.solver;
    cfg.T = o.T;
    const auto traj = integrate(spec, to_lagrangian(u0), cfg);

    std::vector<std::pair<std::size_t, std::string>> states;
    if (c.write_states) {
        for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof name, "state_%05zu.csv", k);
            art.write(name, [&](std::ostream& os) { io::write_state_csv(os, traj.snapshots[k]); });
            // Link the snapshot to the diagnostics entry at the same time.
            for (std::size_t i = 0; i < traj.diagnostics.size(); ++i) {
                if (traj.diagnostics[i].t == traj.snapshots[k].t) states.emplace_back(i, name);
            }
        }
    }
    art.write("trajectory.jsonl", [&](std::ostream& os) { io::write_trajectory_jsonl(os, traj, states); });
    art.write("initial.csv", [&](std::ostream& os) { io::write_field_csv(os, u0); });
    const auto final_field = push_forward(traj.final_state(), grid);
    art.write("final.csv", [&](std::ostream& os) { io::write_field_csv(os, final_field); });
    art.write("final_state.csv", [&](std::ostream& os) { io::write_state_csv(os, traj.final_state()); });

    const auto crest = std::max_element(final_field.u.begin(), final_field.u.end());
    double min_y = 1.0, max_y = 1.0;
    for (const auto& d : traj.diagnostics) {
        min_y = std::min(min_y, d.min_y_xi);
        max_y = std::max(max_y, d.max_y_xi);
    }
    o.results = {{"steps", traj.steps()},
                 {"t_final", num(traj.final_state().t)},
                 {"min_y_xi", num(min_y)},
                 {"max_y_xi", num(max_y)},
                 {"crest_x", num(grid.x(static_cast<std::size_t>(crest - final_field.u.begin())))},
                 {"crest_u", num(*crest)},
                 {"left_guaranteed_regime_at",
                  traj.left_guaranteed_regime_at ? num(*traj.left_guaranteed_regime_at) : json(nullptr)}};
    if (traj.breakdown) o.breakdown = breakdown_json(*traj.breakdown);
    return o;
}

Outcome picard(const config::RunConfig& c, Artifacts& art) {
    const auto spec = EquationSpec::from_tag(c.equation);
    if (spec.has_density()) throw config::ConfigError("equation", "picard supports ch and novikov only");
    const Grid1D grid(c.L, c.N);
    const auto u0 = initial_field(c, spec, grid);
    Outcome o;
    o.T = horizon(c, spec, u0);
    const PicardConfig pc{o.T, c.picard.time_steps, c.picard.n_max, c.picard.tol, c.solver.p, c.solver.C_cal};
    const auto rep = picard_iterate(spec, u0, pc);
    art.write("picard.csv", [&](std::ostream& os) { io::write_picard_csv(os, rep); });
    art.write("picard_final.csv", [&](std::ostream& os) { io::write_field_csv(os, rep.final_field); });
    json ratios = json::array();
    for (std::size_t n = 1; n < rep.increments.size(); ++n) {
        ratios.push_back(rep.increments[n - 1] > 0.0 ? num(rep.increments[n] / rep.increments[n - 1]) : json(nullptr));
    }
    double high = 0.0;
    for (double h : rep.high_norms) high = std::max(high, h);
    o.results = {{"iterations", rep.iterations},
                 {"converged", rep.converged},
                 {"increment_ratios", ratios},
                 {"max_high_norm", num(high)}};
    return o;
}

Outcome stability(const config::RunConfig& c, Artifacts& art) {
    const auto spec = EquationSpec::from_tag(c.equation);
    const Grid1D grid(c.L, c.N);
    const auto u0 = initial_field(c, spec, grid);
    const auto pert = experiments::make_field(c.experiment.perturbation, grid);
    Outcome o;
    o.T = horizon(c, spec, u0);
    experiments::StabilityOptions opts{c.solver, c.experiment.samples};
    const auto rep = experiments::stability_experiment(spec, u0, pert, c.experiment.eps, o.T, opts);
    art.write("stability.csv", [&](std::ostream& os) { io::write_stability_csv(os, rep); });
    art.write("stability.jsonl", [&](std::ostream& os) { io::write_stability_jsonl(os, rep); });
    o.results = {{"rho_min", num(rep.rho_min)}, {"rho_max", num(rep.rho_max)}, {"variation", num(rep.variation)},
                 {"partial", rep.partial}};
    for (const auto& row : rep.rows) {
        if (row.breakdown_time) {
            o.breakdown = {{"t", num(*row.breakdown_time)}, {"epsilon", num(row.epsilon)}};
            break;
        }
    }
    return o;
}

Outcome dependence(const config::RunConfig& c, Artifacts& art) {
    const auto spec = EquationSpec::from_tag(c.equation);
    const Grid1D grid(c.L, c.N);
    const auto u0 = initial_field(c, spec, grid);
    Outcome o;
    o.T = horizon(c, spec, u0);
    experiments::DependenceOptions opts{c.solver, c.experiment.levels, c.experiment.delta0, c.experiment.samples};
    const auto rep = experiments::continuous_dependence_experiment(
        spec, u0, experiments::sequence_rule_from_tag(c.experiment.rule), o.T, opts);
    art.write("dependence.csv", [&](std::ostream& os) { io::write_dependence_csv(os, rep); });
    bool partial = false;
    for (const auto& r : rep.rows) partial = partial || r.partial;
    o.results = {{"observed_rate", rep.observed_rate ? num(*rep.observed_rate) : json(nullptr)}, {"partial", partial}};
    if (partial) o.breakdown = {{"reason", "breakdown before T in at least one run"}};
    return o;
}

Outcome besov_audit(const config::RunConfig& c, Artifacts& art) {
    const Grid1D grid(c.L, c.N);
    const besov::FilterBank bank(grid);
    const auto corpus = besov::random_corpus(grid, c.audit.corpus, c.seed);
    besov::AuditOptions opts;
    opts.log_epsilon = c.audit.log_epsilon;
    auto rows = besov::inequality_audit(corpus, bank, opts);
    if (c.audit.transport) {
        TransportAuditOptions t;
        t.p = c.solver.p;
        const auto tr = transport_audit(corpus, bank, t);
        rows.insert(rows.end(), tr.begin(), tr.end());
    }
    art.write("audit.csv", [&](std::ostream& os) { io::write_audit_csv(os, rows); });
    Outcome o;
    o.results = {{"rows", rows.size()}, {"max_block", bank.max_block()}};
    return o;
}

Outcome peakon_run(const config::RunConfig& c, Artifacts& art) {
    peakon::PeakonEnsemble e;
    if (c.initial.kind == "multipeakon") {
        e.p = c.initial.p;
        e.q = c.initial.q;
    } else if (c.initial.kind == "peakon") {
        e.p = {c.initial.amplitude};
        e.q = {c.initial.centre};
    } else {
        e = peakon::random_ensemble(c.peakon.M, c.seed);
    }
    const auto run = peakon::integrate(e, c.peakon.dt, c.peakon.T, c.peakon.stride);
    art.write("ensemble.csv", [&](std::ostream& os) { io::write_ensemble_csv(os, e); });
    art.write("ensemble_final.csv", [&](std::ostream& os) { io::write_ensemble_csv(os, run.snapshots.back()); });
    art.write("peakon.jsonl", [&](std::ostream& os) { io::write_peakon_jsonl(os, run); });
    Outcome o;
    o.T = c.peakon.T;
    const double h0 = run.hamiltonian.front();
    double drift = 0.0;
    for (double h : run.hamiltonian) drift = std::max(drift, std::abs(h - h0) / std::abs(h0));
    o.results = {{"hamiltonian_relative_drift", num(drift)},
                 {"momentum_drift", num(peakon::momentum(run.snapshots.back()) - peakon::momentum(e))}};
    if (run.collision_time) {
        o.breakdown = {{"t", num(*run.collision_time)}, {"index", *run.collision_index}, {"reason", "peakon collision"}};
    }
    return o;
}

Outcome w1inf_demo(const config::RunConfig& c, Artifacts& art) {
    Outcome o;
    o.T = c.T_auto ? 1.0 : c.solver.T;
    const auto rep = experiments::w1inf_discontinuity_demo(c.experiment.c, c.experiment.eps, o.T, c.solver.p);
    art.write("w1inf.csv", [&](std::ostream& os) { io::write_w1inf_csv(os, rep); });
    json rows = json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"epsilon", num(r.epsilon)}, {"w1inf_ratio", num(r.w1inf_ratio)}, {"lp_ratio", num(r.lp_ratio)}});
    }
    o.results = {{"rows", rows}};
    return o;
}

}  // namespace

int run(const config::RunConfig& cfg, std::ostream& log) {
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (!fs::is_directory(cfg.out)) {
        log << "error: output.dir: cannot create '" << cfg.out.string() << "'\n";
        return 2;
    }
    Artifacts art(cfg.out);
    Outcome o;
    try {
        if (cfg.command == "simulate") o = simulate(cfg, art);
        else if (cfg.command == "picard") o = picard(cfg, art);
        else if (cfg.command == "stability") o = stability(cfg, art);
        else if (cfg.command == "dependence") o = dependence(cfg, art);
        else if (cfg.command == "besov-audit") o = besov_audit(cfg, art);
        else if (cfg.command == "peakon") o = peakon_run(cfg, art);
        else if (cfg.command == "w1inf-demo") o = w1inf_demo(cfg, art);
        else throw config::ConfigError("command", "unknown command '" + cfg.command + "'");
    } catch (const config::ConfigError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidArgument& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    } catch (const NonFiniteError& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }

    json manifest{{"version", version()},
                  {"command", cfg.command},
                  {"timestamp", timestamp()},
                  {"config", config_json(cfg, o.T)},
                  {"files", art.files()},
                  {"results", o.results},
                  {"breakdown", o.breakdown}};
    {
        auto os = io::open_output(cfg.out / "manifest.json");
        os << manifest.dump(2) << '\n';
    }
    log << cfg.command << ": wrote " << art.files().size() + 1 << " files to " << cfg.out.string();
    if (!o.breakdown.is_null()) log << " (breakdown recorded)";
    log << '\n';
    return 0;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lagrangian laboratory for Camassa-Holm-type equations", "chlab"};
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "TOML run configuration");
    auto* out_opt = app.add_option("--out", out_dir, "output directory (overrides output.dir)");
    auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides seed)");
    app.add_option("--set", sets, "key=value override, repeatable");
    app.set_version_flag("--version", version());

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << version() << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    config::RunConfig cfg;
    try {
        config::Table table;
        if (!config_path.empty()) table = config::load_toml(config_path);
        for (const auto& s : sets) config::apply_override(table, s);
        if (*out_opt) table["output.dir"] = out_dir;
        if (*seed_opt) table["seed"] = std::to_string(seed);
        cfg = config::resolve(table);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    try {
        return run(cfg, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace chlab::cli
