#include "chlab/besov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "chlab/error.hpp"
#include "chlab/fft.hpp"
#include "chlab/fields.hpp"

namespace chlab::besov {

namespace {

constexpr double kInner = 0.75;
constexpr double kOuter = 4.0 / 3.0;

double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

std::string fmt(double v) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

double chi(double k) {
    const double a = std::abs(k);
    if (a <= kInner) return 1.0;
    if (a >= kOuter) return 0.0;
    const double t = (a - kInner) / (kOuter - kInner);
    const double lo = glue(1.0 - t);
    return lo / (lo + glue(t));
}

double phi(double k) { return chi(0.5 * k) - chi(k); }

FilterBank::FilterBank(const Grid1D& grid) : grid_(grid), max_block_(-1) {
    if (!grid.periodic()) throw InvalidArgument("Littlewood-Paley blocks need a periodic grid");
    const double kn = grid.nyquist();
    while (kInner * std::ldexp(1.0, max_block_ + 1) < kn) ++max_block_;
    if (max_block_ < 1) {
        throw InvalidArgument("grid too small: Nyquist " + fmt(kn) + " hosts fewer than three dyadic blocks");
    }
    const std::size_t bins = grid.size() / 2 + 1;
    profiles_.assign(static_cast<std::size_t>(max_block_) + 2, std::vector<double>(bins));
    for (std::size_t m = 0; m < bins; ++m) {
        const double k = grid.wavenumber(m);
        profiles_[0][m] = chi(k);
        for (int j = 0; j <= max_block_; ++j) profiles_[static_cast<std::size_t>(j) + 1][m] = phi(std::ldexp(k, -j));
    }
}

std::span<const double> FilterBank::profile(int j) const {
    if (j < -1 || j > max_block_) throw InvalidArgument("block index out of range");
    return profiles_[static_cast<std::size_t>(j + 1)];
}

double FilterBank::partition_sum(std::size_t m) const {
    double s = 0.0;
    for (const auto& prof : profiles_) s += prof.at(m);
    return s;
}

std::vector<std::vector<double>> blocks(std::span<const double> u, const FilterBank& bank) {
    if (u.size() != bank.grid().size()) throw InvalidArgument("field and filter bank grids differ");
    const auto c = spectral::forward(u);
    std::vector<std::vector<double>> out;
    out.reserve(bank.block_count());
    std::vector<spectral::Complex> tmp(c.size());
    for (int j = -1; j <= bank.max_block(); ++j) {
        const auto prof = bank.profile(j);
        for (std::size_t m = 0; m < c.size(); ++m) tmp[m] = c[m] * prof[m];
        out.push_back(spectral::inverse(tmp, u.size()));
    }
    return out;
}

std::vector<double> block_lp_norms(std::span<const double> u, const FilterBank& bank, double p) {
    const auto bl = blocks(u, bank);
    std::vector<double> out(bl.size());
    const double dx = bank.grid().dx();
    for (std::size_t i = 0; i < bl.size(); ++i) out[i] = lp_norm(bl[i], dx, p);
    return out;
}

BesovProfile aggregate(std::span<const double> block_norms, double s, double p, double r) {
    if (!(r >= 1.0)) throw InvalidArgument("r must satisfy 1 <= r <= inf");
    BesovProfile prof{s, p, r, std::vector<double>(block_norms.size()), 0.0};
    for (std::size_t i = 0; i < block_norms.size(); ++i) {
        const int j = static_cast<int>(i) - 1;
        prof.blocks[i] = std::exp2(j * s) * block_norms[i];
    }
    if (std::isinf(r)) {
        prof.norm = *std::max_element(prof.blocks.begin(), prof.blocks.end());
    } else if (r == 1.0) {
        for (double a : prof.blocks) prof.norm += a;
    } else {
        const double mx = *std::max_element(prof.blocks.begin(), prof.blocks.end());
        if (mx > 0.0) {
            double acc = 0.0;
            for (double a : prof.blocks) acc += std::pow(a / mx, r);
            prof.norm = mx * std::pow(acc, 1.0 / r);
        }
    }
    return prof;
}

BesovProfile besov_norm(std::span<const double> u, double s, double p, double r, const FilterBank& bank) {
    return aggregate(block_lp_norms(u, bank, p), s, p, r);
}

double critical_norm(std::span<const double> u, double p, const FilterBank& bank) {
    return besov_norm(u, 1.0 + 1.0 / p, p, 1.0, bank).norm;
}

std::vector<std::vector<double>> random_corpus(const Grid1D& grid, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double kmax = grid.nyquist() / 8.0;
    const double half = 0.5 * grid.length();
    std::vector<std::vector<double>> corpus;
    corpus.reserve(count);
    while (corpus.size() < count) {
        const int terms = 1 + static_cast<int>(unit(rng) * 4.0);
        std::vector<double> u(grid.size(), 0.0);
        for (int t = 0; t < terms; ++t) {
            const double amp = 2.0 * unit(rng) - 1.0;
            const double k = kmax * unit(rng);
            const double phase = 2.0 * std::numbers::pi * unit(rng);
            const double width = 1.0 + 2.0 * unit(rng);
            const double centre = 0.4 * half * (2.0 * unit(rng) - 1.0);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double z = (grid.x(i) - centre) / width;
                u[i] += amp * std::cos(k * grid.x(i) + phase) * std::exp(-0.5 * z * z);
            }
        }
        // Strict band limit below N/4 so products stay resolved.
        auto c = spectral::forward(u);
        for (std::size_t m = grid.size() / 4; m < c.size(); ++m) c[m] = 0.0;
        u = spectral::inverse(c, grid.size());
        if (sup_norm(u) > 1e-3) corpus.push_back(std::move(u));
    }
    return corpus;
}

namespace {

std::vector<double> product(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

class Auditor {
public:
    explicit Auditor(std::vector<AuditRow>& rows) : rows_(rows) {}
    void record(const std::string& name, const std::string& params, double ratio) {
        for (auto& row : rows_) {
            if (row.inequality == name && row.param_set == params) {
                row.empirical_C = std::max(row.empirical_C, ratio);
                return;
            }
        }
        rows_.push_back({name, params, ratio});
    }

private:
    std::vector<AuditRow>& rows_;
};

}  // namespace

std::vector<AuditRow> inequality_audit(std::span<const std::vector<double>> corpus, const FilterBank& bank,
                                       const AuditOptions& opts) {
    std::vector<AuditRow> rows;
    Auditor audit(rows);
    const Grid1D& grid = bank.grid();

    for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
        const auto& u = corpus[idx];
        const auto& v = corpus[(idx + 1) % corpus.size()];
        const auto uv = product(u, v);
        const auto vx = spectral::derivative(v, grid);
        const auto u_vx = product(u, vx);
        const double u_inf = sup_norm(u);
        const double v_inf = sup_norm(v);

        for (double p : opts.ps) {
            const auto nu = block_lp_norms(u, bank, p);
            const auto nv = block_lp_norms(v, bank, p);
            const auto nuv = block_lp_norms(uv, bank, p);
            const auto nuvx = block_lp_norms(u_vx, bank, p);
            const auto nvx = block_lp_norms(vx, bank, p);
            auto B = [&](std::span<const double> n, double s, double r) { return aggregate(n, s, p, r).norm; };

            for (const auto& [s1, s2, lambda] : opts.interpolation) {
                const double theta = lambda * s1 + (1.0 - lambda) * s2;
                for (double r : opts.rs) {
                    const double rhs = std::pow(B(nu, s1, r), lambda) * std::pow(B(nu, s2, r), 1.0 - lambda);
                    audit.record("interpolation",
                                 "s1=" + fmt(s1) + ";s2=" + fmt(s2) + ";lambda=" + fmt(lambda) + ";p=" + fmt(p) +
                                     ";r=" + fmt(r),
                                 B(nu, theta, r) / rhs);
                }
                const double rhs1 = (1.0 / (s2 - s1)) * (1.0 / lambda + 1.0 / (1.0 - lambda)) *
                                    std::pow(B(nu, s1, kInf), lambda) * std::pow(B(nu, s2, kInf), 1.0 - lambda);
                audit.record("interpolation_l1",
                             "s1=" + fmt(s1) + ";s2=" + fmt(s2) + ";lambda=" + fmt(lambda) + ";p=" + fmt(p),
                             B(nu, theta, 1.0) / rhs1);
            }

            const double s = 1.0 / p;
            const double binf = B(nu, s, kInf);
            const double log_rhs = binf * std::log(std::numbers::e + B(nu, s + opts.log_epsilon, kInf) / binf);
            audit.record("log_interpolation", "s=" + fmt(s) + ";eps=" + fmt(opts.log_epsilon) + ";p=" + fmt(p),
                         B(nu, s, 1.0) / log_rhs);

            for (double r : opts.rs) {
                for (double sa : {0.5, 1.0 + 1.0 / p}) {
                    const double alg = B(nuv, sa, r) / (u_inf * B(nv, sa, r) + B(nu, sa, r) * v_inf);
                    audit.record("product_algebra", "s=" + fmt(sa) + ";p=" + fmt(p) + ";r=" + fmt(r), alg);
                    const double der =
                        B(nuvx, sa, r) / (B(nu, sa + 1.0, r) * v_inf + u_inf * B(nvx, sa, r));
                    audit.record("product_derivative", "s=" + fmt(sa) + ";p=" + fmt(p) + ";r=" + fmt(r), der);
                }
            }

            // ||uv||_{B^{s1}} <= C ||u||_{B^{s1}} ||v||_{B^{s2}} at the critical pair.
            const double c1 = 1.0 / p;
            const double c2 = 1.0 + 1.0 / p;
            audit.record("product_critical", "s1=" + fmt(c1) + ";s2=" + fmt(c2) + ";p=" + fmt(p) + ";r=1",
                         B(nuv, c1, 1.0) / (B(nu, c1, 1.0) * B(nv, c2, 1.0)));

            const double ms = 1.0 / p + 0.5;
            audit.record("moser", "s1=" + fmt(ms) + ";s2=" + fmt(ms) + ";p=" + fmt(p),
                         B(nuv, 2.0 * ms - 1.0 / p, 1.0) / (B(nu, ms, 1.0) * B(nv, ms, 1.0)));
        }
    }
    return rows;
}

}  // namespace chlab::besov
