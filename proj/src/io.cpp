#include "chlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace chlab::io {

namespace {

using nlohmann::json;

json num(double v) {
    if (std::isfinite(v)) return v;
    return number(v);
}

}  // namespace

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return os;
}

void write_field_csv(std::ostream& os, const EulerianField& f) {
    os << (f.eta ? "x,u,eta\n" : "x,u\n");
    for (std::size_t i = 0; i < f.u.size(); ++i) {
        os << number(f.grid.x(i)) << ',' << number(f.u[i]);
        if (f.eta) os << ',' << number((*f.eta)[i]);
        os << '\n';
    }
}

void write_state_csv(std::ostream& os, const LagrangianState& s) {
    os << (s.V ? "xi,y,U,y_xi,U_xi,V\n" : "xi,y,U,y_xi,U_xi\n");
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << number(s.xi[i]) << ',' << number(s.y[i]) << ',' << number(s.U[i]) << ',' << number(s.y_xi[i]) << ','
           << number(s.U_xi[i]);
        if (s.V) os << ',' << number((*s.V)[i]);
        os << '\n';
    }
}

void write_trajectory_jsonl(std::ostream& os, const Trajectory& traj,
                            const std::vector<std::pair<std::size_t, std::string>>& state_files) {
    auto file_for = [&](std::size_t i) -> const std::string* {
        for (const auto& [k, name] : state_files) {
            if (k == i) return &name;
        }
        return nullptr;
    };
    for (std::size_t i = 0; i < traj.diagnostics.size(); ++i) {
        const auto& d = traj.diagnostics[i];
        json j{{"t", num(d.t)},
               {"min_y_xi", num(d.min_y_xi)},
               {"max_y_xi", num(d.max_y_xi)},
               {"max_abs_U_xi", num(d.max_abs_U_xi)},
               {"energy", num(d.energy)},
               {"momentum", num(d.momentum)},
               {"p", num(d.norms.p)},
               {"lp", num(d.norms.lp)},
               {"w1p", num(d.norms.w1p)},
               {"w1inf", num(d.norms.w1inf)}};
        if (const auto* f = file_for(i)) j["state"] = *f;
        os << j.dump() << '\n';
    }
}

void write_ensemble_csv(std::ostream& os, const peakon::PeakonEnsemble& e) {
    os << "p,q\n";
    for (std::size_t i = 0; i < e.size(); ++i) os << number(e.p[i]) << ',' << number(e.q[i]) << '\n';
}

void write_peakon_jsonl(std::ostream& os, const peakon::PeakonRun& run) {
    for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
        const auto& e = run.snapshots[i];
        json j{{"t", num(e.t)}, {"p", e.p}, {"q", e.q}, {"H", num(run.hamiltonian[i])}};
        os << j.dump() << '\n';
    }
}

void write_picard_csv(std::ostream& os, const PicardReport& r) {
    os << "n,increment\n";
    for (std::size_t n = 0; n < r.increments.size(); ++n) os << n << ',' << number(r.increments[n]) << '\n';
}

void write_audit_csv(std::ostream& os, const std::vector<besov::AuditRow>& rows) {
    os << "inequality,param_set,empirical_C\n";
    for (const auto& r : rows) os << r.inequality << ',' << r.param_set << ',' << number(r.empirical_C) << '\n';
}

void write_stability_csv(std::ostream& os, const experiments::StabilityReport& r) {
    os << "epsilon,p,initial_besov,initial_lagrangian,initial_eulerian,rho,rho_besov,partial\n";
    for (const auto& row : r.rows) {
        os << number(row.epsilon) << ',' << number(r.p) << ',' << number(row.initial_besov) << ','
           << number(row.initial_lagrangian) << ',' << number(row.initial_eulerian) << ',' << number(row.rho) << ','
           << number(row.rho_besov) << ',' << (row.partial ? 1 : 0) << '\n';
    }
}

void write_stability_jsonl(std::ostream& os, const experiments::StabilityReport& r) {
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.times.size(); ++i) {
            json j{{"epsilon", num(row.epsilon)},
                   {"t", num(row.times[i])},
                   {"lagrangian", num(row.lagrangian[i])},
                   {"eulerian_lp", num(row.eulerian_lp[i])}};
            os << j.dump() << '\n';
        }
    }
}

void write_dependence_csv(std::ostream& os, const experiments::DependenceReport& r) {
    os << "m,initial_distance,sup_high,sup_low,sup_norm_high,partial\n";
    for (const auto& row : r.rows) {
        os << row.m << ',' << number(row.initial_distance) << ',' << number(row.sup_high) << ','
           << number(row.sup_low) << ',' << number(row.sup_norm_high) << ',' << (row.partial ? 1 : 0) << '\n';
    }
}

void write_w1inf_csv(std::ostream& os, const experiments::W1InfReport& r) {
    os << "epsilon,w1inf_initial,w1inf_final,w1inf_ratio,lp_initial,lp_final,lp_ratio\n";
    for (const auto& row : r.rows) {
        os << number(row.epsilon) << ',' << number(row.w1inf_initial) << ',' << number(row.w1inf_final) << ','
           << number(row.w1inf_ratio) << ',' << number(row.lp_initial) << ',' << number(row.lp_final) << ','
           << number(row.lp_ratio) << '\n';
    }
}

}  // namespace chlab::io
