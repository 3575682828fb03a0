#include <cmath>
#include <random>

#include "chlab/besov.hpp"
#include "chlab/error.hpp"
#include "chlab/fft.hpp"
#include "chlab/fields.hpp"
#include "chlab/peakon.hpp"
#include "doctest.h"

using namespace chlab;
using besov::kInf;

namespace {

std::vector<double> gaussian(const Grid1D& g, double w = 1.0) {
    std::vector<double> u(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = std::exp(-g.x(i) * g.x(i) / (w * w));
    return u;
}

}  // namespace

TEST_CASE("cutoff profiles") {
    CHECK(besov::chi(0.0) == 1.0);
    CHECK(besov::chi(0.75) == 1.0);
    CHECK(besov::chi(4.0 / 3.0) == 0.0);
    CHECK(besov::chi(-0.5) == 1.0);
    for (double k = 0.0; k < 3.0; k += 0.01) {
        CHECK(besov::chi(k) >= 0.0);
        CHECK(besov::chi(k) <= 1.0);
        CHECK(besov::chi(k + 0.01) <= besov::chi(k));
        CHECK(besov::phi(k) >= 0.0);
    }
    CHECK(besov::phi(0.7) == 0.0);
    CHECK(besov::phi(2.7) == 0.0);
}

TEST_CASE("filter bank sums to one and reconstructs") {
    const Grid1D g(40.0, 4096);
    const besov::FilterBank bank(g);
    CHECK(bank.max_block() == 8);
    CHECK(bank.block_count() == 10);
    for (std::size_t m = 0; m <= 2048; ++m) CHECK(std::abs(bank.partition_sum(m) - 1.0) < 1e-12);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    std::vector<double> u(4096);
    for (auto& v : u) v = nd(rng);
    const auto b = besov::blocks(u, bank);
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double s = 0.0;
        for (const auto& blk : b) s += blk[i];
        err = std::max(err, std::abs(s - u[i]));
    }
    CHECK(err < 1e-12);
}

TEST_CASE("blocks two apart have disjoint supports") {
    const besov::FilterBank bank(Grid1D(40.0, 4096));
    for (int j = -1; j + 2 <= bank.max_block(); ++j) {
        const auto a = bank.profile(j), b = bank.profile(j + 2);
        for (std::size_t m = 0; m < a.size(); ++m) CHECK(a[m] * b[m] == 0.0);
    }
    CHECK_THROWS_AS(bank.profile(bank.max_block() + 1), InvalidArgument);
}

TEST_CASE("a pure mode inside one block has norm 2^{js} ||u||_p") {
    // k = 90 = 2^6 * 1.406 sits where phi_6 = 1 and every other block vanishes.
    const Grid1D g(2.0 * M_PI, 1024);
    const besov::FilterBank bank(g);
    std::vector<double> u(1024);
    for (std::size_t i = 0; i < 1024; ++i) u[i] = std::cos(90.0 * g.x(i));
    for (double s : {0.0, 0.5, 1.5}) {
        for (double p : {1.0, 2.0, 4.0}) {
            const auto prof = besov::besov_norm(u, s, p, 1.0, bank);
            const double want = std::pow(2.0, 6.0 * s) * lp_norm(u, g.dx(), p);
            CHECK(prof.norm == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("B^s_{2,2} is comparable with the Sobolev norm") {
    // Plancherel oracle: ||u||_{H^s}^2 = sum (1+k^2)^s |u_k|^2 (1 + [interior bin]) L / N^2.
    const Grid1D g(40.0, 2048);
    const besov::FilterBank bank(g);
    for (double w : {0.5, 1.0, 2.0}) {
        const auto u = gaussian(g, w);
        const auto c = spectral::forward(u);
        const double n = static_cast<double>(g.size());
        double h = 0.0;
        for (std::size_t m = 0; m < c.size(); ++m) {
            const double k = g.wavenumber(m);
            const double mult = (m == 0 || m == c.size() - 1) ? 1.0 : 2.0;
            h += mult * std::pow(1.0 + k * k, 1.5) * std::norm(c[m]);
        }
        h = std::sqrt(h * g.length() / (n * n));
        const double b = besov::besov_norm(u, 1.5, 2.0, 2.0, bank).norm;
        CAPTURE(w);
        CHECK(b / h > 0.2);
        CHECK(b / h < 5.0);
    }
}

TEST_CASE("aggregation over r") {
    const std::vector<double> bn{1.0, 2.0, 4.0};
    const auto inf = besov::aggregate(bn, 1.0, 2.0, kInf);
    CHECK(inf.blocks[0] == doctest::Approx(0.5));
    CHECK(inf.blocks[2] == doctest::Approx(8.0));
    CHECK(inf.norm == doctest::Approx(8.0));
    CHECK(besov::aggregate(bn, 0.0, 2.0, 1.0).norm == doctest::Approx(7.0));
    CHECK(besov::aggregate(bn, 0.0, 2.0, 2.0).norm == doctest::Approx(std::sqrt(21.0)));
    CHECK_THROWS_AS(besov::aggregate(bn, 0.0, 2.0, 0.5), InvalidArgument);
}

TEST_CASE("norms are monotone in r and in s") {
    const Grid1D g(40.0, 1024);
    const besov::FilterBank bank(g);
    const auto corpus = besov::random_corpus(g, 10, 3);
    for (const auto& u : corpus) {
        const double n1 = besov::besov_norm(u, 1.0, 2.0, 1.0, bank).norm;
        const double n2 = besov::besov_norm(u, 1.0, 2.0, 2.0, bank).norm;
        const double ni = besov::besov_norm(u, 1.0, 2.0, kInf, bank).norm;
        CHECK(ni <= n2 * (1 + 1e-14));
        CHECK(n2 <= n1 * (1 + 1e-14));
        // Block -1 carries weight 2^{-s}, so s1 < s2 only gives the bound up to a factor 2^{s2-s1}.
        const double low = besov::besov_norm(u, 0.5, 2.0, 1.0, bank).norm;
        CHECK(low <= std::max(1.0, std::pow(2.0, 0.5)) * n1);
    }
}

TEST_CASE("scaling ladder: dilation raises high norms") {
    const Grid1D g(40.0, 2048);
    const besov::FilterBank bank(g);
    double prev = 0.0;
    for (double w : {2.0, 1.0, 0.5, 0.25}) {
        const double n = besov::critical_norm(gaussian(g, w), 2.0, bank);
        CHECK(n > prev);
        prev = n;
    }
}

TEST_CASE("interpolation inequality holds on a corpus and is tight at lambda = 1") {
    const Grid1D g(40.0, 1024);
    const besov::FilterBank bank(g);
    const auto corpus = besov::random_corpus(g, 20, 9);
    besov::AuditOptions o;
    o.ps = {2.0};
    o.rs = {1.0};
    o.interpolation = {{0.5, 1.5, 0.5}, {1.0, 2.0, 1.0}};
    const auto rows = besov::inequality_audit(corpus, bank, o);
    bool saw_tight = false;
    for (const auto& r : rows) {
        CAPTURE(r.inequality);
        CAPTURE(r.param_set);
        CHECK(std::isfinite(r.empirical_C));
        CHECK(r.empirical_C >= 0.0);
        if (r.inequality == "interpolation") {
            CHECK(r.empirical_C <= 1.0 + 1e-10);
            if (r.param_set.find("lambda=1") != std::string::npos) {
                CHECK(r.empirical_C == doctest::Approx(1.0).epsilon(1e-12));
                saw_tight = true;
            }
        }
    }
    CHECK(saw_tight);
}

TEST_CASE("random corpus is deterministic") {
    const Grid1D g(40.0, 256);
    const auto a = besov::random_corpus(g, 3, 42), b = besov::random_corpus(g, 3, 42), c = besov::random_corpus(g, 3, 43);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("small grids are rejected") {
    CHECK_THROWS_AS(besov::FilterBank(Grid1D(40.0, 8)), InvalidArgument);
    CHECK_THROWS_AS(besov::FilterBank(Grid1D(40.0, 64, false)), InvalidArgument);
}

namespace {

// Plancherel: ||u||_{H^s}^2 = (L / N^2) sum over all bins of (1+k^2)^s |u_k|^2.
double sobolev_norm(const std::vector<double>& u, const Grid1D& g, double s) {
    const auto c = spectral::forward(u);
    const double n = static_cast<double>(g.size());
    double h = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
        const double k = g.wavenumber(m);
        const double mult = (m == 0 || m == c.size() - 1) ? 1.0 : 2.0;
        h += mult * std::pow(1.0 + k * k, s) * std::norm(c[m]);
    }
    return std::sqrt(h * g.length() / (n * n));
}

}  // namespace

// Documented defect: with block -1 weighted by 2^{-s} the B^{1.5}_{2,1} norm
// of exp(-x^2) is 0.72 of its H^{1.5} norm, outside the 20% band.
TEST_CASE("Gaussian B^{1.5}_{2,1} within 20% of H^{1.5}" * doctest::should_fail()) {
    const Grid1D g(40.0, 2048);
    const besov::FilterBank bank(g);
    const auto u = gaussian(g);
    const double ratio = besov::besov_norm(u, 1.5, 2.0, 1.0, bank).norm / sobolev_norm(u, g, 1.5);
    MESSAGE("B/H ratio " << ratio);
    CHECK(std::abs(ratio - 1.0) <= 0.2);
}

TEST_CASE("Gaussian B^{1.5}_{2,1} and H^{1.5} are equivalent with resolution-independent constants") {
    std::vector<double> ratios;
    for (std::size_t n : {1024u, 2048u, 4096u}) {
        const Grid1D g(40.0, n);
        const besov::FilterBank bank(g);
        const auto u = gaussian(g);
        ratios.push_back(besov::besov_norm(u, 1.5, 2.0, 1.0, bank).norm / sobolev_norm(u, g, 1.5));
    }
    CHECK(ratios[0] == doctest::Approx(0.7165).epsilon(1e-3));
    CHECK(ratios[1] == doctest::Approx(ratios[0]).epsilon(1e-10));
    CHECK(ratios[2] == doctest::Approx(ratios[0]).epsilon(1e-10));
}

// Documented defect: block -1 carries 2^{-s}, so lowering s raises its weight
// and the plain embedding inequality fails on low-frequency fields.
TEST_CASE("embedding monotonicity with constant one" * doctest::should_fail()) {
    const Grid1D g(40.0, 1024);
    const besov::FilterBank bank(g);
    for (const auto& u : besov::random_corpus(g, 100, 21)) {
        const double lo = besov::besov_norm(u, 0.5, 2.0, 2.0, bank).norm;
        const double hi = besov::besov_norm(u, 1.5, 2.0, 1.0, bank).norm;
        CHECK(lo <= hi * (1.0 + 1e-10));
    }
}

TEST_CASE("embedding monotonicity with the block -1 constant") {
    const Grid1D g(40.0, 1024);
    const besov::FilterBank bank(g);
    for (const auto& u : besov::random_corpus(g, 100, 21)) {
        for (double p : {1.0, 2.0, 3.0}) {
            for (auto [s1, s2] : {std::pair{0.5, 1.5}, std::pair{1.0, 1.5}, std::pair{0.0, 2.5}}) {
                for (auto [r1, r2] : {std::pair{kInf, 1.0}, std::pair{2.0, 1.0}, std::pair{1.0, 1.0}}) {
                    const double lo = besov::besov_norm(u, s1, p, r1, bank).norm;
                    const double hi = besov::besov_norm(u, s2, p, r2, bank).norm;
                    CHECK(lo <= std::max(1.0, std::pow(2.0, s2 - s1)) * hi * (1.0 + 1e-10));
                }
            }
        }
    }
}

TEST_CASE("algebra estimate on a Gaussian and a sine packet") {
    const Grid1D g(40.0, 1024);
    const besov::FilterBank bank(g);
    std::vector<double> packet(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) packet[i] = std::sin(6.0 * g.x(i)) * std::exp(-0.25 * g.x(i) * g.x(i));
    const std::vector<std::vector<double>> pair{gaussian(g), packet};
    besov::AuditOptions o;
    o.ps = {2.0};
    const auto rows = besov::inequality_audit(pair, bank, o);
    int seen = 0;
    for (const auto& r : rows) {
        if (r.inequality != "product_algebra" && r.inequality != "moser") continue;
        ++seen;
        CAPTURE(r.param_set);
        CHECK(std::isfinite(r.empirical_C));
        CHECK(r.empirical_C > 0.0);
    }
    CHECK(seen > 0);
}

TEST_CASE("critical norm of a mollified peakon grows as the mollifier shrinks") {
    const Grid1D g(40.0, 8192);
    const besov::FilterBank bank(g);
    double prev = 0.0;
    for (double delta : {0.4, 0.2, 0.1, 0.05, 0.025}) {
        const auto u = peakon::mollify(peakon::sample_field({{1.0}, {0.0}, 0.0}, g), delta);
        const double n = besov::critical_norm(u.u, 2.0, bank);
        if (prev > 0.0) MESSAGE("delta " << delta << " norm " << n << " log2 growth " << std::log2(n / prev));
        CHECK(n > prev);
        prev = n;
    }
}
