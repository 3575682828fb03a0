#include "chlab/peakon.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>
#include <numeric>
#include <random>
#include <string>

#include "chlab/error.hpp"
#include "chlab/fft.hpp"
#include "chlab/kernel.hpp"

namespace chlab::peakon {

void PeakonEnsemble::validate() const {
    if (p.empty()) throw InvalidArgument("peakon ensemble must hold at least one peakon");
    if (p.size() != q.size()) throw InvalidArgument("peakon amplitudes and positions differ in length");
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!std::isfinite(p[i]) || !std::isfinite(q[i])) throw NonFiniteError("non-finite peakon data", i);
        if (i > 0 && !(q[i] > q[i - 1])) {
            throw InvalidArgument("peakon positions must be strictly increasing (index " + std::to_string(i) + ")");
        }
    }
}

PeakonRates multipeakon_rhs(const PeakonEnsemble& ens) {
    ens.validate();
    const auto s = kernel::exp_scans(kernel::WeightedNodes(ens.q, ens.p));
    const std::size_t m = ens.size();
    PeakonRates r{std::vector<double>(m), std::vector<double>(m)};
    for (std::size_t i = 0; i < m; ++i) {
        r.dq[i] = s.left[i] + s.right[i] - ens.p[i];
        r.dp[i] = ens.p[i] * (s.left[i] - s.right[i]);
    }
    return r;
}

double hamiltonian(const PeakonEnsemble& ens) {
    double h = 0.0;
    for (std::size_t i = 0; i < ens.size(); ++i) {
        for (std::size_t j = 0; j < ens.size(); ++j) {
            h += ens.p[i] * ens.p[j] * std::exp(-std::abs(ens.q[i] - ens.q[j]));
        }
    }
    return 0.5 * h;
}

double momentum(const PeakonEnsemble& ens) { return std::accumulate(ens.p.begin(), ens.p.end(), 0.0); }

EulerianField sample_field(const PeakonEnsemble& ens, const Grid1D& grid) {
    ens.validate();
    EulerianField f{grid, std::vector<double>(grid.size(), 0.0), std::nullopt, ens.t};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i);
        for (std::size_t k = 0; k < ens.size(); ++k) f.u[i] += ens.p[k] * std::exp(-std::abs(x - ens.q[k]));
    }
    return f;
}

EulerianField mollify(const EulerianField& field, double delta) {
    if (!(delta > 0.0)) throw InvalidArgument("mollification width must be positive");
    field.validate();
    auto gauss = [delta](double k, std::size_t) { return spectral::Complex{std::exp(-delta * delta * k * k), 0.0}; };
    EulerianField out{field.grid, spectral::apply(field.u, field.grid, gauss), std::nullopt, field.t};
    if (field.eta) out.eta = spectral::apply(*field.eta, field.grid, gauss);
    return out;
}

namespace {

PeakonEnsemble shifted(const PeakonEnsemble& e, const PeakonRates& k, double h) {
    PeakonEnsemble out = e;
    for (std::size_t i = 0; i < e.size(); ++i) {
        out.p[i] += h * k.dp[i];
        out.q[i] += h * k.dq[i];
    }
    out.t += h;
    return out;
}

}  // namespace

PeakonEnsemble step_rk4(const PeakonEnsemble& ens, double dt) {
    const auto k1 = multipeakon_rhs(ens);
    const auto k2 = multipeakon_rhs(shifted(ens, k1, 0.5 * dt));
    const auto k3 = multipeakon_rhs(shifted(ens, k2, 0.5 * dt));
    const auto k4 = multipeakon_rhs(shifted(ens, k3, dt));
    PeakonEnsemble out = ens;
    for (std::size_t i = 0; i < ens.size(); ++i) {
        out.p[i] += dt / 6.0 * (k1.dp[i] + 2.0 * k2.dp[i] + 2.0 * k3.dp[i] + k4.dp[i]);
        out.q[i] += dt / 6.0 * (k1.dq[i] + 2.0 * k2.dq[i] + 2.0 * k3.dq[i] + k4.dq[i]);
    }
    out.t = ens.t + dt;
    return out;
}

PeakonRun integrate(const PeakonEnsemble& ens0, double dt, double T, std::size_t stride, double collision_gap) {
    ens0.validate();
    if (!(dt > 0.0) || !(T >= 0.0)) throw InvalidArgument("peakon integration needs dt > 0 and T >= 0");
    if (stride == 0) stride = 1;
    PeakonRun run;
    run.snapshots.push_back(ens0);
    run.hamiltonian.push_back(hamiltonian(ens0));

    auto min_gap = [](const PeakonEnsemble& e, std::size_t& at) {
        double g = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < e.size(); ++i) {
            if (e.q[i + 1] - e.q[i] < g) {
                g = e.q[i + 1] - e.q[i];
                at = i;
            }
        }
        return g;
    };

    PeakonEnsemble e = ens0;
    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    for (std::size_t n = 1; n <= steps; ++n) {
        PeakonEnsemble next;
        try {
            next = step_rk4(e, dt);
        } catch (const InvalidArgument&) {
            // an RK stage crossed two positions
            std::size_t at = 0;
            min_gap(e, at);
            run.collision_time = e.t;
            run.collision_index = at;
            break;
        }
        std::size_t at = 0;
        if (min_gap(next, at) < collision_gap) {
            run.collision_time = next.t;
            run.collision_index = at;
            e = next;
            break;
        }
        e = std::move(next);
        if (n % stride == 0 || n == steps) {
            run.snapshots.push_back(e);
            run.hamiltonian.push_back(hamiltonian(e));
        }
    }
    if (run.collision_time && run.snapshots.back().t != e.t) {
        run.snapshots.push_back(e);
        run.hamiltonian.push_back(hamiltonian(e));
    }
    return run;
}

PeakonEnsemble random_ensemble(std::size_t M, std::uint64_t seed) {
    if (M == 0) throw InvalidArgument("ensemble size must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.5, 1.5);
    std::uniform_real_distribution<double> gap(1.0, 3.0);
    PeakonEnsemble e;
    double q = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        e.p.push_back(amp(rng));
        e.q.push_back(q);
        q += gap(rng);
    }
    const double centre = 0.5 * e.q.back();
    for (double& v : e.q) v -= centre;
    return e;
}

ExponentialSum::ExponentialSum(std::vector<double> amplitudes, std::vector<double> centres) {
    if (amplitudes.size() != centres.size() || amplitudes.empty()) {
        throw InvalidArgument("exponential sum needs matching, non-empty amplitudes and centres");
    }
    std::vector<std::size_t> order(centres.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return centres[a] < centres[b]; });
    for (std::size_t i : order) {
        if (!centres_.empty() && centres[i] == centres_.back()) {
            amplitudes_.back() += amplitudes[i];
        } else {
            centres_.push_back(centres[i]);
            amplitudes_.push_back(amplitudes[i]);
        }
    }
    const std::size_t n = centres_.size();
    std::vector<double> left(n);
    std::vector<double> right(n);
    left[0] = amplitudes_[0];
    for (std::size_t i = 1; i < n; ++i) {
        left[i] = std::exp(-(centres_[i] - centres_[i - 1])) * left[i - 1] + amplitudes_[i];
    }
    right[n - 1] = amplitudes_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        right[i] = std::exp(-(centres_[i + 1] - centres_[i])) * right[i + 1] + amplitudes_[i];
    }
    // Tails are stored as zero-width sentinels: pieces_.front() carries the
    // left tail amplitude in B, pieces_.back() the right tail in A.
    pieces_.push_back({centres_.front(), 0.0, 0.0, right[0]});
    for (std::size_t k = 0; k + 1 < n; ++k) {
        pieces_.push_back({centres_[k], centres_[k + 1] - centres_[k], left[k], right[k + 1]});
    }
    pieces_.push_back({centres_.back(), 0.0, left[n - 1], 0.0});
}

ExponentialSum ExponentialSum::difference(const PeakonEnsemble& a, const PeakonEnsemble& b) {
    std::vector<double> amps = a.p;
    std::vector<double> cs = a.q;
    for (std::size_t i = 0; i < b.size(); ++i) {
        amps.push_back(-b.p[i]);
        cs.push_back(b.q[i]);
    }
    return ExponentialSum(std::move(amps), std::move(cs));
}

double ExponentialSum::value(double x) const {
    double f = 0.0;
    for (std::size_t i = 0; i < centres_.size(); ++i) f += amplitudes_[i] * std::exp(-std::abs(x - centres_[i]));
    return f;
}

double ExponentialSum::sup_norm() const {
    double m = 0.0;
    for (std::size_t k = 1; k + 1 < pieces_.size(); ++k) {
        const auto& pc = pieces_[k];
        const double d = pc.width;
        m = std::max({m, std::abs(pc.A + pc.B * std::exp(-d)), std::abs(pc.A * std::exp(-d) + pc.B)});
        if (pc.A * pc.B > 0.0) {
            const double s = 0.5 * (std::log(pc.A / pc.B) + d);
            if (s > 0.0 && s < d) m = std::max(m, std::abs(pc.A * std::exp(-s) + pc.B * std::exp(s - d)));
        }
    }
    m = std::max({m, std::abs(pieces_.front().B), std::abs(pieces_.back().A)});
    return m;
}

double ExponentialSum::derivative_sup_norm() const {
    double m = std::max(std::abs(pieces_.front().B), std::abs(pieces_.back().A));
    for (std::size_t k = 1; k + 1 < pieces_.size(); ++k) {
        const auto& pc = pieces_[k];
        const double d = pc.width;
        m = std::max({m, std::abs(-pc.A + pc.B * std::exp(-d)), std::abs(-pc.A * std::exp(-d) + pc.B)});
        if (pc.A * pc.B < 0.0) {
            const double s = 0.5 * (std::log(-pc.A / pc.B) + d);
            if (s > 0.0 && s < d) m = std::max(m, std::abs(-pc.A * std::exp(-s) + pc.B * std::exp(s - d)));
        }
    }
    return m;
}

double ExponentialSum::integrate_abs_pow(bool derivative, double p) const {
    if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
    using boost::math::quadrature::gauss;
    const double sgn = derivative ? -1.0 : 1.0;
    // Tails: |c|^p int_0^inf e^{-p s} ds.
    double total = (std::pow(std::abs(pieces_.front().B), p) + std::pow(std::abs(pieces_.back().A), p)) / p;
    for (std::size_t k = 1; k + 1 < pieces_.size(); ++k) {
        const auto& pc = pieces_[k];
        const double d = pc.width;
        auto g = [&](double s) { return std::pow(std::abs(sgn * pc.A * std::exp(-s) + pc.B * std::exp(s - d)), p); };
        std::vector<double> cuts{0.0, d};
        // zero of sgn*A e^{-s} + B e^{s-d}
        const double ratio = -sgn * pc.A / pc.B;
        if (pc.B != 0.0 && ratio > 0.0) {
            const double s = 0.5 * (std::log(ratio) + d);
            if (s > 0.0 && s < d) cuts.insert(cuts.begin() + 1, s);
        }
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double a = cuts[c];
            const double b = cuts[c + 1];
            const auto chunks = static_cast<std::size_t>(std::ceil((b - a) * std::max(p, 1.0) / 0.5));
            const double h = (b - a) / static_cast<double>(std::max<std::size_t>(chunks, 1));
            for (std::size_t q = 0; q < std::max<std::size_t>(chunks, 1); ++q) {
                total += gauss<double, 20>::integrate(g, a + q * h, a + (q + 1) * h);
            }
        }
    }
    return total;
}

double ExponentialSum::lp_norm(double p) const { return std::pow(integrate_abs_pow(false, p), 1.0 / p); }

double ExponentialSum::derivative_lp_norm(double p) const { return std::pow(integrate_abs_pow(true, p), 1.0 / p); }

}  // namespace chlab::peakon
