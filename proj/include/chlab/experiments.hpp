#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chlab/equations.hpp"
#include "chlab/fields.hpp"
#include "chlab/lagrangian_solver.hpp"

namespace chlab::experiments {

/// Named initial profiles.
///   gaussian:     amplitude * exp(-((x - centre)/width)^2)
///   bump:         amplitude * exp(1 - 1/(1 - z^2)), z = (x - centre)/width, |z| < 1
///   peakon:       amplitude * exp(-|x - centre|), mollified by delta > 0
///   multipeakon:  sum_i p_i exp(-|x - q_i|), mollified by delta > 0
struct Profile {
    std::string kind = "gaussian";
    double amplitude = 0.5;
    double centre = 0.0;
    double width = 1.0;
    double delta = 0.0;
    std::vector<double> p;
    std::vector<double> q;
};

/// Samples the profile; 2CH gets eta = 0. Throws InvalidArgument naming the
/// offending parameter.
EulerianField make_field(const Profile& profile, const Grid1D& grid);

/// ||.||_{W^{1,inf} cap W^{1,p}} of (f1 - f2) with derivative (df1 - df2).
double intersection_distance(std::span<const double> f1, std::span<const double> df1, std::span<const double> f2,
                             std::span<const double> df2, double dx, double p);

/// Distance of two Lagrangian states in the flow-map metric
///   ||U1 - U2||_{W^{1,inf} cap W^{1,p}} + ||y1 - y2||_{W^{1,inf} cap W^{1,p}}.
double lagrangian_distance(const LagrangianState& a, const LagrangianState& b, double p);

struct StabilityRow {
    double epsilon = 0.0;
    double initial_besov = 0.0;       // ||u1(0) - u2(0)||_{B^{1+1/p}_{p,1}}
    double initial_lagrangian = 0.0;  // flow-map distance at t = 0
    double initial_eulerian = 0.0;    // ||u1(0) - u2(0)||_{W^{1,inf} cap W^{1,p}}
    std::vector<double> times;
    std::vector<double> lagrangian;   // flow-map distance per time
    std::vector<double> eulerian_lp;  // ||u1 - u2||_{L^p} after push-forward
    double rho = 0.0;                 // sup_t lagrangian(t) / initial_lagrangian
    double rho_besov = 0.0;           // sup_t lagrangian(t) / initial_besov
    bool partial = false;
    std::optional<double> breakdown_time;
};

struct StabilityReport {
    double p = 2.0;
    double T = 0.0;
    std::vector<StabilityRow> rows;
    double rho_min = 0.0;
    double rho_max = 0.0;
    double variation = 1.0;  // rho_max / rho_min over rows with a nonzero initial distance
    bool partial = false;
};

struct StabilityOptions {
    SolverConfig solver;     // T here is ignored; the call's T wins
    std::size_t samples = 16;  // time samples of the distance in (0, T]
};

/// Runs u0 and u0 + eps * perturbation for each eps in a strictly decreasing
/// ladder through the Lagrangian solver. Runs execute concurrently; rows are
/// assembled in ladder order.
StabilityReport stability_experiment(const EquationSpec& spec, const EulerianField& u0,
                                     const EulerianField& perturbation, const std::vector<double>& eps_ladder,
                                     double T, const StabilityOptions& opts = {});

enum class SequenceRule {
    Constant,       // u0^m = u0
    Amplitude,      // u0^m = (1 + 2^-m) u0
    Mollification,  // u0^m = u0 mollified with delta = delta0 * 2^-m
};

SequenceRule sequence_rule_from_tag(const std::string& tag);
std::string tag(SequenceRule rule);

struct DependenceRow {
    int m = 0;
    double initial_distance = 0.0;  // ||u0^m - u0||_{B^{1+1/p}_{p,1}}
    double sup_high = 0.0;          // sup_t ||u^m - u||_{B^{1+1/p}_{p,1}}
    double sup_low = 0.0;           // sup_t ||u^m - u||_{B^{1/p}_{p,1}}
    double sup_norm_high = 0.0;     // sup_t ||u^m||_{B^{1+1/p}_{p,1}}
    bool partial = false;
};

struct DependenceReport {
    double p = 2.0;
    double T = 0.0;
    SequenceRule rule = SequenceRule::Amplitude;
    std::vector<DependenceRow> rows;
    /// Least-squares slope of log sup_high against log initial_distance;
    /// absent when fewer than two rows have nonzero distances.
    std::optional<double> observed_rate;
};

struct DependenceOptions {
    SolverConfig solver;
    std::vector<int> levels{1, 2, 3, 4, 5};
    double delta0 = 0.1;
    std::size_t samples = 8;
};

DependenceReport continuous_dependence_experiment(const EquationSpec& spec, const EulerianField& u0,
                                                  SequenceRule rule, double T, const DependenceOptions& opts = {});

struct W1InfRow {
    double epsilon = 0.0;
    double w1inf_initial = 0.0;
    double w1inf_final = 0.0;
    double w1inf_ratio = 1.0;
    double lp_initial = 0.0;
    double lp_final = 0.0;
    double lp_ratio = 1.0;
};

struct W1InfReport {
    double c = 1.0;
    double T = 1.0;
    double p = 2.0;
    std::vector<W1InfRow> rows;
};

/// Single peakons of speeds c and c + eps evolved by the multipeakon system;
/// distances from the exact piecewise-exponential representation.
W1InfReport w1inf_discontinuity_demo(double c, const std::vector<double>& eps_ladder, double T, double p = 2.0);

}  // namespace chlab::experiments
