#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "chlab/besov.hpp"
#include "chlab/cli.hpp"
#include "chlab/error.hpp"
#include "chlab/experiments.hpp"
#include "chlab/kernel.hpp"
#include "chlab/lagrangian_solver.hpp"
#include "chlab/peakon.hpp"
#include "chlab/reference.hpp"

namespace py = pybind11;
using namespace chlab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vec(const Array& a) {
    if (a.ndim() != 1) throw InvalidArgument("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

Array to_array(const std::vector<double>& v) { return Array(static_cast<py::ssize_t>(v.size()), v.data()); }

EulerianField field(const std::string& tag, const Array& u, double L) {
    const auto spec = EquationSpec::from_tag(tag);
    auto uv = to_vec(u);
    const Grid1D grid(L, uv.size());
    EulerianField f{grid, std::move(uv), std::nullopt, 0.0};
    if (spec.has_density()) f.eta = std::vector<double>(f.u.size(), 0.0);
    return f;
}

py::dict simulate(const std::string& tag, const Array& u, double L, double dt, double T, double theta_min) {
    const auto spec = EquationSpec::from_tag(tag);
    const auto u0 = field(tag, u, L);
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.T = T > 0.0 ? T : suggested_T(spec, u0, cfg.C_cal, cfg.p);
    cfg.theta_min = theta_min;
    const auto traj = integrate(spec, to_lagrangian(u0), cfg);
    std::vector<double> t, min_y;
    for (const auto& d : traj.diagnostics) {
        t.push_back(d.t);
        min_y.push_back(d.min_y_xi);
    }
    py::dict out;
    out["T"] = cfg.T;
    out["t"] = to_array(t);
    out["min_y_xi"] = to_array(min_y);
    out["final_u"] = to_array(push_forward(traj.final_state(), u0.grid).u);
    out["final_y"] = to_array(traj.final_state().y);
    out["t_final"] = traj.final_state().t;
    if (traj.breakdown) {
        out["breakdown"] = py::dict(py::arg("t") = traj.breakdown->t, py::arg("xi") = traj.breakdown->xi,
                                    py::arg("min_y_xi") = traj.breakdown->min_y_xi);
    } else {
        out["breakdown"] = py::none();
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_chlab, m) {
    m.doc() = "Lagrangian laboratory for Camassa-Holm-type equations";
    m.attr("__version__") = cli::version();

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<NonFiniteError>(m, "NonFiniteError", PyExc_ArithmeticError);
    py::register_exception<BreakdownError>(m, "BreakdownError", PyExc_RuntimeError);

    m.def("grid_points", [](double L, std::size_t N) { return to_array(Grid1D(L, N).points()); },
          py::arg("L"), py::arg("N"));

    m.def(
        "exp_scans",
        [](const Array& y, const Array& w) {
            const auto yv = to_vec(y);
            const auto wv = to_vec(w);
            const auto s = kernel::exp_scans(kernel::WeightedNodes(yv, wv));
            return py::make_tuple(to_array(s.left), to_array(s.right));
        },
        py::arg("y"), py::arg("w"));
    m.def(
        "conv_p",
        [](const Array& y, const Array& w) {
            const auto yv = to_vec(y);
            const auto wv = to_vec(w);
            return to_array(kernel::conv_p(kernel::WeightedNodes(yv, wv)));
        },
        py::arg("y"), py::arg("w"));
    m.def(
        "conv_dp",
        [](const Array& y, const Array& w) {
            const auto yv = to_vec(y);
            const auto wv = to_vec(w);
            return to_array(kernel::conv_dp(kernel::WeightedNodes(yv, wv)));
        },
        py::arg("y"), py::arg("w"));

    m.def(
        "besov_norm",
        [](const Array& u, double L, double s, double p, double r) {
            const auto uv = to_vec(u);
            const besov::FilterBank bank(Grid1D(L, uv.size()));
            return besov::besov_norm(uv, s, p, r, bank).norm;
        },
        py::arg("u"), py::arg("L"), py::arg("s"), py::arg("p"), py::arg("r"));
    m.def(
        "suggested_T",
        [](const std::string& tag, const Array& u, double L, double C_cal, double p) {
            return suggested_T(EquationSpec::from_tag(tag), field(tag, u, L), C_cal, p);
        },
        py::arg("equation"), py::arg("u"), py::arg("L"), py::arg("C_cal") = 0.5, py::arg("p") = 2.0);

    m.def("simulate", &simulate, py::arg("equation"), py::arg("u"), py::arg("L"), py::arg("dt") = 1e-3,
          py::arg("T") = 0.0, py::arg("theta_min") = 0.25,
          "Lagrangian run; T <= 0 selects the suggested horizon.");
    m.def(
        "eulerian_integrate",
        [](const std::string& tag, const Array& u, double L, double dt, double T) {
            const auto out = eulerian_integrate(EquationSpec::from_tag(tag), field(tag, u, L), dt, T);
            return to_array(out.back().u);
        },
        py::arg("equation"), py::arg("u"), py::arg("L"), py::arg("dt"), py::arg("T"));
    m.def(
        "picard",
        [](const std::string& tag, const Array& u, double L, double T, std::size_t n_max, double tol) {
            PicardConfig cfg;
            cfg.T = T;
            cfg.n_max = n_max;
            cfg.tol = tol;
            const auto rep = picard_iterate(EquationSpec::from_tag(tag), field(tag, u, L), cfg);
            py::dict out;
            out["iterations"] = rep.iterations;
            out["increments"] = to_array(rep.increments);
            out["converged"] = rep.converged;
            out["T"] = rep.T;
            out["final_u"] = to_array(rep.final_field.u);
            return out;
        },
        py::arg("equation"), py::arg("u"), py::arg("L"), py::arg("T") = 0.0, py::arg("n_max") = 40,
        py::arg("tol") = 1e-8);

    m.def(
        "hamiltonian",
        [](const Array& p, const Array& q) { return peakon::hamiltonian({to_vec(p), to_vec(q), 0.0}); },
        py::arg("p"), py::arg("q"));
    m.def(
        "peakon_integrate",
        [](const Array& p, const Array& q, double dt, double T) {
            const auto run = peakon::integrate({to_vec(p), to_vec(q), 0.0}, dt, T, 1);
            const auto& last = run.snapshots.back();
            py::dict out;
            out["t"] = last.t;
            out["p"] = to_array(last.p);
            out["q"] = to_array(last.q);
            out["H"] = to_array(run.hamiltonian);
            out["collision_time"] = run.collision_time ? py::cast(*run.collision_time) : py::none();
            return out;
        },
        py::arg("p"), py::arg("q"), py::arg("dt"), py::arg("T"));

    m.def(
        "w1inf_demo",
        [](double c, const std::vector<double>& eps, double T, double p) {
            const auto rep = experiments::w1inf_discontinuity_demo(c, eps, T, p);
            py::list rows;
            for (const auto& r : rep.rows) {
                rows.append(py::dict(py::arg("epsilon") = r.epsilon, py::arg("w1inf_ratio") = r.w1inf_ratio,
                                     py::arg("lp_ratio") = r.lp_ratio));
            }
            return rows;
        },
        py::arg("c"), py::arg("eps"), py::arg("T") = 1.0, py::arg("p") = 2.0);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::main(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line front door; returns (status, stdout, stderr).");
}
