#include <cmath>
#include <limits>
#include <numbers>

#include "chlab/error.hpp"
#include "chlab/fft.hpp"
#include "chlab/fields.hpp"
#include "doctest.h"

using namespace chlab;

namespace {

EulerianField gaussian(const Grid1D& g, double a = 1.0) {
    return sample_function(g, [a](double x) { return a * std::exp(-x * x); });
}

}  // namespace

TEST_CASE("sample_function") {
    const Grid1D g(40.0, 1024);
    const auto zero = sample_function(g, [](double) { return 0.0; });
    for (double v : zero.u) CHECK(v == 0.0);
    CHECK(zero.t == 0.0);

    const auto peak = sample_function(g, [](double x) { return std::exp(-std::abs(x)); });
    CHECK(peak.u[512] == 1.0);

    // int exp(-2x^2) dx = sqrt(pi/2)
    const auto gs = gaussian(g);
    const double l2 = lp_norm(gs.u, g.dx(), 2.0);
    CHECK(std::abs(l2 * l2 - std::sqrt(std::numbers::pi / 2.0)) < 1e-10);
}

TEST_CASE("sample_function reports the offending index") {
    const Grid1D g(40.0, 64);
    try {
        sample_function(g, [](double x) { return x == 0.0 ? std::numeric_limits<double>::quiet_NaN() : 1.0; });
        FAIL("expected NonFiniteError");
    } catch (const NonFiniteError& e) {
        CHECK(e.index() == 32);
    }
}

TEST_CASE("norms") {
    const Grid1D g(40.0, 1024);
    const auto zero = sample_function(g, [](double) { return 0.0; });
    const auto z = norms(zero, 2.0);
    CHECK(z.lp == 0.0);
    CHECK(z.w1p == 0.0);
    CHECK(z.w1inf == 0.0);

    const auto peak = sample_function(g, [](double x) { return std::exp(-std::abs(x)); });
    CHECK(std::abs(norms(peak, 1.0).lp - 2.0) < 1e-3);
    // |d/dx e^{-|x|}| = e^{-|x|} a.e.; differences avoid the Gibbs overshoot at the kink.
    CHECK(norms(peak, 2.0, Derivative::FiniteDifference).w1inf == doctest::Approx(1.0).epsilon(1e-12));

    for (double p : {1.0, 2.0, 3.0, 4.0}) {
        const auto r = norms(gaussian(g), p);
        CHECK(r.w1p >= r.lp);
        CHECK(r.lp >= 0.0);
        CHECK(r.p == p);
    }
}

TEST_CASE("to_lagrangian") {
    const Grid1D g(40.0, 1024);
    const auto zero = to_lagrangian(sample_function(g, [](double) { return 0.0; }));
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(zero.U[i] == 0.0);
        CHECK(zero.y[i] == g.x(i));
        CHECK(zero.y_xi[i] == 1.0);
    }
    const auto s = to_lagrangian(gaussian(g));
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        err = std::max(err, std::abs(s.U_xi[i] + 2.0 * x * std::exp(-x * x)));
        CHECK(s.y_xi[i] == 1.0);
    }
    CHECK(err < 1e-8);
}

TEST_CASE("Lagrangian and Eulerian norms agree at t = 0") {
    const Grid1D g(40.0, 512);
    const auto f = gaussian(g, 0.7);
    const auto s = to_lagrangian(f);
    for (double p : {1.0, 2.0, 3.0}) {
        const auto a = norms(f, p);
        const auto b = norms(s, p);
        CHECK(a.lp == doctest::Approx(b.lp).epsilon(1e-14));
        CHECK(a.w1p == doctest::Approx(b.w1p).epsilon(1e-14));
        CHECK(a.w1inf == doctest::Approx(b.w1inf).epsilon(1e-14));
    }
}

TEST_CASE("push_forward of the identity map is the identity on matching grids") {
    const Grid1D g(40.0, 256);
    const auto f = gaussian(g);
    const auto back = push_forward(to_lagrangian(f), g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(back.u[i] - f.u[i]) < 1e-14);
}

TEST_CASE("push_forward of a translated map") {
    // Shift by a whole number of cells, across the periodic seam.
    const Grid1D g(32.0, 1024);
    LagrangianState s = to_lagrangian(sample_function(g, [](double x) { return std::exp(-std::abs(x)); }));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double xi = g.x(i);
        s.y[i] = xi + 1.0;
        s.U_xi[i] = xi == 0.0 ? 0.0 : -std::copysign(1.0, xi) * std::exp(-std::abs(xi));
    }
    const auto u = push_forward(s, g);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        err = std::max(err, std::abs(u.u[i] - std::exp(-std::abs(x - 1.0))));
    }
    CHECK(err < 1e-6);
}

TEST_CASE("push_forward round trip converges at fourth order") {
    // Evaluate on a grid with twice the points so half the targets fall
    // between labels.
    std::vector<double> errs;
    for (std::size_t n : {256u, 512u, 1024u}) {
        const Grid1D g(40.0, n);
        const Grid1D fine(40.0, 2 * n);
        const auto u = push_forward(to_lagrangian(gaussian(g)), fine);
        double e = 0.0;
        for (std::size_t i = 0; i < fine.size(); ++i) {
            e = std::max(e, std::abs(u.u[i] - std::exp(-fine.x(i) * fine.x(i))));
        }
        errs.push_back(e);
    }
    for (std::size_t k = 1; k < errs.size(); ++k) {
        const double order = std::log2(errs[k - 1] / errs[k]);
        MESSAGE("round-trip order " << order << " error " << errs[k]);
        CHECK(order > 3.5);
    }
}

TEST_CASE("state validation") {
    const Grid1D g(40.0, 64);
    auto s = to_lagrangian(gaussian(g));
    CHECK_NOTHROW(s.validate());

    auto bad = s;
    std::swap(bad.y[10], bad.y[11]);
    CHECK_THROWS_AS(bad.validate(), BreakdownError);
    CHECK_THROWS_AS(push_forward(bad, g), BreakdownError);

    bad = s;
    bad.y_xi[5] = 0.0;
    CHECK_THROWS_AS(bad.validate(), BreakdownError);

    bad = s;
    bad.U[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(bad.validate(), NonFiniteError);

    bad = s;
    bad.U.pop_back();
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("centered differences of y track y_xi at second order") {
    const Grid1D g(40.0, 256);
    auto s = to_lagrangian(gaussian(g));
    // A smooth monotone map: y = xi + 0.3 sin(2 pi xi / L) L / (2 pi)
    const double k = 2.0 * std::numbers::pi / g.length();
    for (std::size_t i = 0; i < g.size(); ++i) {
        s.y[i] = s.xi[i] + 0.3 * std::sin(k * s.xi[i]) / k;
        s.y_xi[i] = 1.0 + 0.3 * std::cos(k * s.xi[i]);
    }
    CHECK_NOTHROW(s.validate());
    double err = 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        err = std::max(err, std::abs((s.y[i + 1] - s.y[i - 1]) / (2.0 * g.dx()) - s.y_xi[i]));
    }
    CHECK(err < g.dx() * g.dx() * k * k * 0.3);
}
