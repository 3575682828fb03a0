#include <cmath>
#include <random>

#include "chlab/error.hpp"
#include "chlab/fft.hpp"
#include "chlab/peakon.hpp"
#include "doctest.h"

using namespace chlab;
using peakon::PeakonEnsemble;

namespace {

// O(M^2) vector field, the oracle for the scan version.
peakon::PeakonRates direct_rates(const PeakonEnsemble& e) {
    const std::size_t m = e.size();
    peakon::PeakonRates r{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double d = e.q[i] - e.q[j];
            const double k = std::exp(-std::abs(d));
            r.dq[i] += e.p[j] * k;
            if (j != i) r.dp[i] += e.p[i] * e.p[j] * (d > 0 ? 1.0 : -1.0) * k;
        }
    }
    return r;
}

}  // namespace

TEST_CASE("single peakon travels at its amplitude") {
    const PeakonEnsemble one{{1.3}, {0.0}, 0.0};
    const auto r = peakon::multipeakon_rhs(one);
    CHECK(r.dp[0] == 0.0);
    CHECK(r.dq[0] == 1.3);
    CHECK(peakon::hamiltonian(one) == doctest::Approx(0.5 * 1.3 * 1.3));
    const auto run = peakon::integrate(one, 0.01, 2.0);
    CHECK(run.snapshots.back().q[0] == doctest::Approx(2.6).epsilon(1e-12));
    CHECK(run.snapshots.back().p[0] == 1.3);
}

TEST_CASE("two-peakon Hamiltonian") {
    const PeakonEnsemble e{{1.0, 1.0}, {0.0, std::log(2.0)}, 0.0};
    // 1/2 (1 + 1 + 2 * 1/2) = 1.5
    CHECK(peakon::hamiltonian(e) == doctest::Approx(1.5).epsilon(1e-15));
    const PeakonEnsemble anti{{1.0, -1.0}, {-1.0, 1.0}, 0.0};
    const auto r = peakon::multipeakon_rhs(anti);
    CHECK(r.dq[0] > 0.0);
    CHECK(r.dq[1] < 0.0);
    CHECK(r.dp[0] > 0.0);
    CHECK(r.dp[1] < 0.0);
}

TEST_CASE("scan rates equal the double sum") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> amp(-1.5, 1.5), gap(0.01, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        PeakonEnsemble e;
        double q = -20.0;
        for (int i = 0; i < 200; ++i) {
            q += gap(rng);
            e.q.push_back(q);
            e.p.push_back(amp(rng));
        }
        const auto a = peakon::multipeakon_rhs(e);
        const auto b = direct_rates(e);
        double scale = 0.0, err = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            scale = std::max({scale, std::abs(b.dp[i]), std::abs(b.dq[i])});
            err = std::max({err, std::abs(a.dp[i] - b.dp[i]), std::abs(a.dq[i] - b.dq[i])});
        }
        CHECK(err / scale < 1e-13);
    }
}

TEST_CASE("Hamiltonian and momentum are conserved") {
    const auto e = peakon::random_ensemble(5, 123);
    const auto run = peakon::integrate(e, 1e-3, 5.0, 100);
    CHECK_FALSE(run.collision_time);
    const double h0 = run.hamiltonian.front();
    for (double h : run.hamiltonian) CHECK(std::abs(h - h0) / h0 < 1e-10);
    CHECK(peakon::momentum(run.snapshots.back()) == doctest::Approx(peakon::momentum(e)).epsilon(1e-12));
}

TEST_CASE("random ensembles respect the documented ranges") {
    const auto e = peakon::random_ensemble(8, 9);
    REQUIRE(e.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(e.p[i] >= 0.5);
        CHECK(e.p[i] <= 1.5);
        if (i > 0) {
            CHECK(e.q[i] - e.q[i - 1] >= 1.0);
            CHECK(e.q[i] - e.q[i - 1] <= 3.0);
        }
    }
    CHECK(peakon::random_ensemble(8, 9).q == e.q);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(PeakonEnsemble({}, {}, 0.0).validate(), InvalidArgument);
    CHECK_THROWS_AS(PeakonEnsemble({1.0, 1.0}, {0.0}, 0.0).validate(), InvalidArgument);
    CHECK_THROWS_AS(PeakonEnsemble({1.0, 1.0}, {1.0, 0.0}, 0.0).validate(), InvalidArgument);
    CHECK_THROWS_AS(peakon::random_ensemble(0, 1), InvalidArgument);
}

TEST_CASE("antipeakon collision is detected") {
    const PeakonEnsemble anti{{1.0, -1.0}, {-1.0, 1.0}, 0.0};
    const auto run = peakon::integrate(anti, 1e-4, 5.0, 100, 1e-6);
    REQUIRE(run.collision_time.has_value());
    REQUIRE(run.collision_index.has_value());
    CHECK(*run.collision_index == 0);
    CHECK(*run.collision_time < 5.0);
    CHECK(run.hamiltonian.front() == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("sampled field and mollifier") {
    const Grid1D g(40.0, 1024);
    const PeakonEnsemble e{{1.0, 0.5}, {-2.0, 3.0}, 0.0};
    const auto f = peakon::sample_field(e, g);
    for (std::size_t i = 0; i < g.size(); i += 37) {
        const double x = g.x(i);
        CHECK(f.u[i] == doctest::Approx(std::exp(-std::abs(x + 2.0)) + 0.5 * std::exp(-std::abs(x - 3.0))).epsilon(1e-14));
    }
    // Mollification commutes with grid translations.
    const PeakonEnsemble shifted{{1.0, 0.5}, {-2.0 + 8 * g.dx(), 3.0 + 8 * g.dx()}, 0.0};
    const auto a = peakon::mollify(f, 0.1);
    const auto b = peakon::mollify(peakon::sample_field(shifted, g), 0.1);
    // Away from the seam, where the sampled field is not periodic.
    for (std::size_t i = 8; i < g.size(); ++i) {
        if (std::abs(g.x(i)) < 12.0) CHECK(std::abs(b.u[i] - a.u[i - 8]) < 1e-12);
    }
    double mf = 0.0, ma = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        mf += f.u[i];
        ma += a.u[i];
    }
    CHECK(ma == doctest::Approx(mf).epsilon(1e-12));
    CHECK_THROWS_AS(peakon::mollify(f, 0.0), InvalidArgument);
}

TEST_CASE("exponential sums match dense sampling") {
    const peakon::ExponentialSum s({1.0, -0.7, 0.4}, {-1.0, 0.5, 0.5});
    const Grid1D g(60.0, 1 << 18);
    double sup = 0.0, dsup = 0.0, l2 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        const double v = s.value(x);
        const double d = -std::copysign(1.0, x + 1.0) * std::exp(-std::abs(x + 1.0)) +
                         0.3 * std::copysign(1.0, x - 0.5) * std::exp(-std::abs(x - 0.5));
        sup = std::max(sup, std::abs(v));
        dsup = std::max(dsup, std::abs(d));
        l2 += v * v * g.dx();
    }
    // The maximum sits on a kink, so sampling can miss it by dx * sup|f'|.
    CHECK(s.sup_norm() >= sup);
    CHECK(s.sup_norm() - sup <= g.dx() * dsup);
    CHECK(s.derivative_sup_norm() == doctest::Approx(dsup).epsilon(1e-3));
    CHECK(s.lp_norm(2.0) == doctest::Approx(std::sqrt(l2)).epsilon(1e-8));
    CHECK(s.value(-1.0) == doctest::Approx(1.0 - 0.3 * std::exp(-1.5)).epsilon(1e-15));
}

TEST_CASE("difference of two single peakons") {
    const PeakonEnsemble a{{1.0}, {0.0}, 0.0}, b{{1.0}, {0.1}, 0.0};
    const auto d = peakon::ExponentialSum::difference(a, b);
    // Between the centres the derivatives of the two peaks add up.
    CHECK(d.derivative_sup_norm() == doctest::Approx(1.0 + std::exp(-0.1)).epsilon(1e-14));
    CHECK(d.sup_norm() == doctest::Approx(1.0 - std::exp(-0.1)).epsilon(1e-14));
    // ||e^{-|x|} - e^{-|x-a|}||_2^2 = 2 - 2(1+a)e^{-a}
    CHECK(d.lp_norm(2.0) == doctest::Approx(std::sqrt(2.0 - 2.0 * 1.1 * std::exp(-0.1))).epsilon(1e-10));
}

TEST_CASE("five random peakons: scan rates equal the double sum") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto e = peakon::random_ensemble(5, seed);
        const auto a = peakon::multipeakon_rhs(e);
        const auto b = direct_rates(e);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(std::abs(a.dp[i] - b.dp[i]) <= 1e-13 * std::max(1.0, std::abs(b.dp[i])));
            CHECK(std::abs(a.dq[i] - b.dq[i]) <= 1e-13 * std::max(1.0, std::abs(b.dq[i])));
        }
    }
}
