#include <cmath>
#include <numbers>

#include "chlab/error.hpp"
#include "chlab/fft.hpp"
#include "chlab/grid.hpp"
#include "doctest.h"

using namespace chlab;

TEST_CASE("grid geometry") {
    const Grid1D g(40.0, 1024);
    CHECK(g.dx() * static_cast<double>(g.size()) == doctest::Approx(40.0).epsilon(1e-15));
    CHECK(g.x(0) == -20.0);
    CHECK(g.x(512) == 0.0);
    for (std::size_t i = 1; i < g.size(); ++i) REQUIRE(g.x(i) > g.x(i - 1));
    CHECK(g.nyquist() == doctest::Approx(std::numbers::pi * 1024 / 40.0));
}

TEST_CASE("grid rejects bad sizes") {
    CHECK_THROWS_AS(Grid1D(40.0, 4), InvalidArgument);
    CHECK_THROWS_AS(Grid1D(40.0, 1000), InvalidArgument);
    CHECK_THROWS_AS(Grid1D(0.0, 64), InvalidArgument);
    CHECK_THROWS_AS(Grid1D(-1.0, 64), InvalidArgument);
}

TEST_CASE("fft round trip and spectral derivative") {
    const Grid1D g(2.0 * std::numbers::pi, 64);
    std::vector<double> u(64), du(64);
    for (std::size_t i = 0; i < 64; ++i) {
        u[i] = std::sin(3.0 * g.x(i)) + 0.25 * std::cos(7.0 * g.x(i));
        du[i] = 3.0 * std::cos(3.0 * g.x(i)) - 1.75 * std::sin(7.0 * g.x(i));
    }
    const auto back = spectral::inverse(spectral::forward(u), 64);
    for (std::size_t i = 0; i < 64; ++i) CHECK(back[i] == doctest::Approx(u[i]).epsilon(1e-14));
    const auto d = spectral::derivative(u, g);
    for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(d[i] - du[i]) < 1e-12);
}

TEST_CASE("two-thirds rule keeps low modes and removes high ones") {
    const Grid1D g(2.0 * std::numbers::pi, 64);
    std::vector<double> low(64), high(64);
    for (std::size_t i = 0; i < 64; ++i) {
        low[i] = std::cos(5.0 * g.x(i));
        high[i] = std::cos(30.0 * g.x(i));
    }
    const auto l = spectral::dealias(low);
    const auto h = spectral::dealias(high);
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(std::abs(l[i] - low[i]) < 1e-14);
        CHECK(std::abs(h[i]) < 1e-13);
    }
    CHECK(spectral::kept_by_two_thirds(21, 64));
    CHECK_FALSE(spectral::kept_by_two_thirds(22, 64));
}
