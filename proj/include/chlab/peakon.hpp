#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chlab/fields.hpp"

namespace chlab::peakon {

/// u(t, x) = sum_i p_i exp(-|x - q_i|) with q strictly increasing.
struct PeakonEnsemble {
    std::vector<double> p;
    std::vector<double> q;
    double t = 0.0;

    std::size_t size() const noexcept { return p.size(); }
    /// Throws InvalidArgument for empty/mismatched arrays or non-increasing q.
    void validate() const;
};

struct PeakonRates {
    std::vector<double> dp;
    std::vector<double> dq;
};

/// Hamiltonian vector field
///   dp_i = sum_{j != i} p_i p_j sign(q_i - q_j) exp(-|q_i - q_j|)
///   dq_i = sum_j p_j exp(-|q_i - q_j|)
/// in O(M) through the exponential scans.
PeakonRates multipeakon_rhs(const PeakonEnsemble& ens);

/// H = 1/2 sum_{i,j} p_i p_j exp(-|q_i - q_j|).
double hamiltonian(const PeakonEnsemble& ens);
double momentum(const PeakonEnsemble& ens);

EulerianField sample_field(const PeakonEnsemble& ens, const Grid1D& grid);

/// Gaussian Fourier cutoff exp(-delta^2 k^2) applied to u (and eta).
EulerianField mollify(const EulerianField& field, double delta);

PeakonEnsemble step_rk4(const PeakonEnsemble& ens, double dt);

struct PeakonRun {
    std::vector<PeakonEnsemble> snapshots;
    std::vector<double> hamiltonian;  // per snapshot
    std::optional<double> collision_time;
    std::optional<std::size_t> collision_index;  // i such that q_{i+1} - q_i hit the threshold
};

/// Fixed-step RK4 to T. Stops with a collision record once a gap drops
/// below `collision_gap`.
PeakonRun integrate(const PeakonEnsemble& ens0, double dt, double T, std::size_t stride = 1,
                    double collision_gap = 1e-10);

/// M peakons with positive amplitudes in [0.5, 1.5] and gaps in [1, 3].
PeakonEnsemble random_ensemble(std::size_t M, std::uint64_t seed);

/// Exact evaluation of f(x) = sum_i a_i exp(-|x - c_i|) (any signs, any
/// order, coincident centres allowed). Between consecutive centres f is a
/// sum of two exponentials, which makes sup norms and one-sided derivative
/// limits exact and L^p integrals accurate to quadrature round-off.
class ExponentialSum {
public:
    ExponentialSum(std::vector<double> amplitudes, std::vector<double> centres);

    /// Difference of two ensembles, a - b.
    static ExponentialSum difference(const PeakonEnsemble& a, const PeakonEnsemble& b);

    double value(double x) const;
    double sup_norm() const;
    /// sup |f'| over all one-sided limits (f' is piecewise smooth).
    double derivative_sup_norm() const;
    double lp_norm(double p) const;
    double derivative_lp_norm(double p) const;
    /// max(||f||_inf, ||f'||_inf)
    double w1inf_norm() const { return std::max(sup_norm(), derivative_sup_norm()); }

private:
    struct Piece {
        double left;   // x range [left, left + width]
        double width;
        double A;      // f = A e^{-(x-left)} + B e^{(x-left-width)}
        double B;
    };
    double integrate_abs_pow(bool derivative, double p) const;

    std::vector<double> centres_;     // sorted, merged
    std::vector<double> amplitudes_;
    std::vector<Piece> pieces_;       // interior intervals
};

}  // namespace chlab::peakon
