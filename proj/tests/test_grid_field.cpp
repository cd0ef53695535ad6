#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ntf/grid.hpp"

using namespace ntf;

namespace {

Grid1D unit_grid(int n, double ext = 0.25) {
    Grid1D g;
    g.x_left = 0.0;
    g.dx = 1.0 / n;
    g.n_cells = n;
    g.ext_left = ext;
    g.ext_right = ext;
    return g;
}

SpaceTimeField constant_field(double c, int n, int levels, double dt = 0.1) {
    SpaceTimeField f(unit_grid(n, c), dt);
    for (int l = 0; l < levels; ++l) f.append_level(std::vector<double>(n, c));
    return f;
}

}  // namespace

TEST_CASE("grid validation") {
    Grid1D g = unit_grid(10);
    CHECK_NOTHROW(g.validate());
    g.dx = 0.0;
    CHECK_THROWS_AS(g.validate(), AdmissibilityError);
    g = unit_grid(10);
    g.ext_left = 1.5;
    CHECK_THROWS_AS(g.validate(), AdmissibilityError);
    g = unit_grid(1);
    CHECK_THROWS_AS(g.validate(), AdmissibilityError);
}

TEST_CASE("sampling a constant field") {
    const SpaceTimeField f = constant_field(0.4, 16, 5);
    CHECK(f.sample({0.0, 0.5}) == 0.4);
    CHECK(f.sample({0.123, 0.77}) == 0.4);
    CHECK(f.sample({-3.0, 0.2}) == 0.4);   // before the window: initial level
    CHECK(f.sample({0.4, 5.0}) == 0.4);    // beyond the domain: plateau
    CHECK_THROWS_AS(f.sample({0.55, 0.5}), NumericalError);  // future
}

TEST_CASE("interpolation reproduces linear profiles and node values") {
    const int n = 20;
    Grid1D g = unit_grid(n);
    const double a = 0.3, b = 0.2;
    std::vector<double> values(n);
    for (int i = 0; i < n; ++i) values[i] = a + b * g.center(i);
    SpaceTimeField f(g, 0.5);
    f.append_level(values);
    f.append_level(values);

    for (int i = 0; i < n; ++i) {
        CHECK(f.sample({0.0, g.center(i)}) == doctest::Approx(values[i]).epsilon(1e-15));
    }
    // Linear in x between centers.
    const double x = g.center(7) + 0.37 * g.dx;
    CHECK(f.sample({0.0, x}) == doctest::Approx(a + b * x).epsilon(1e-13));
}

TEST_CASE("time interpolation uses bilinear weights") {
    const int n = 8;
    SpaceTimeField f(unit_grid(n, 0.5), 0.2);
    f.append_level(std::vector<double>(n, 0.2));
    f.append_level(std::vector<double>(n, 0.6));
    CHECK(f.sample({0.1, 0.5}) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(f.sample({0.05, 0.5}) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("interpolation is monotone: no overshoot beyond node values") {
    const int n = 32;
    Grid1D g = unit_grid(n, 0.5);
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    SpaceTimeField f(g, 0.1);
    std::vector<std::vector<double>> levels;
    for (int l = 0; l < 4; ++l) {
        std::vector<double> v(n);
        for (double& x : v) x = uni(rng);
        levels.push_back(v);
        f.append_level(v);
    }
    for (int trial = 0; trial < 2000; ++trial) {
        const double t = uni(rng) * 0.3;
        const double x = uni(rng);
        const double value = f.sample({t, x});
        const int l0 = std::min(static_cast<int>(t / 0.1), 3);
        const int l1 = std::min(l0 + 1, 3);
        const int i0 = std::min(static_cast<int>(x / g.dx - 0.5), n - 1);
        double lo = 2.0, hi = -2.0;
        for (int l : {l0, l1}) {
            for (int i : {i0 - 1, i0, i0 + 1, i0 + 2}) {
                const double v = (i < 0 || i >= n) ? 0.5 : levels[l][i];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        CHECK(value >= lo - 1e-12);
        CHECK(value <= hi + 1e-12);
    }
}

TEST_CASE("history ring buffer evicts and clamps to the earliest level") {
    const int n = 4;
    SpaceTimeField f(unit_grid(n, 0.0), 1.0, 3);
    for (int l = 0; l < 6; ++l) {
        f.append_level(std::vector<double>(n, 0.1 * l));
    }
    CHECK(f.levels() == 6);
    CHECK(f.first_retained() == 3);
    CHECK_THROWS_AS(f.level_values(2), NumericalError);
    // Below the retained window the earliest retained level answers.
    CHECK(f.sample({0.0, 0.4}) == doctest::Approx(0.3));
    CHECK(f.sample({5.0, 0.4}) == doctest::Approx(0.5));
}

TEST_CASE("suggested history depth covers the quadrature reach") {
    const int depth = suggested_history_depth(0.1, 0.1, 16.0, 0.01);
    CHECK(depth >= static_cast<int>(12.0 * 0.1 * 16.0 / 0.01));
    CHECK(suggested_history_depth(0.0, 0.0, 1.0, 0.5) >= 4);
}

TEST_CASE("sanity band rejects wild values") {
    SpaceTimeField f(unit_grid(4, 0.0), 1.0);
    CHECK_THROWS_AS(f.append_level({0.0, 2.0, 0.0, 0.0}), NumericalError);
    CHECK_THROWS_AS(f.append_level({0.0, -0.2, 0.0, 0.0}), NumericalError);
    CHECK_NOTHROW(f.append_level({1.04, 0.0, -0.04, 0.5}));
}

TEST_CASE("spatial variation") {
    SUBCASE("constant field has none") {
        const SpaceTimeField f = constant_field(0.7, 12, 3);
        CHECK(tv_space(f, 0) == 0.0);
        CHECK(tv_spacetime(f, 0.2) == 0.0);
    }

    SUBCASE("a monotone step counts its height once") {
        const int n = 10;
        std::vector<double> v(n, 0.2);
        for (int i = n / 2; i < n; ++i) v[i] = 0.9;
        CHECK(tv_grid(v) == doctest::Approx(0.7).epsilon(1e-15));

        // Static in time: the space-time variation is height * elapsed time.
        Grid1D g = unit_grid(n, 0.2);
        SpaceTimeField f(g, 0.25);
        for (int l = 0; l < 5; ++l) f.append_level(v);
        CHECK(tv_spacetime(f, 1.0) == doctest::Approx(0.7 * 1.0).epsilon(1e-13));
    }

    SUBCASE("sinusoid over one period") {
        // One full period starting at the crest, so every monotone run is
        // delimited by extrema and the discrete variation is 4A + O(dx^2).
        const int n = 1000;
        Grid1D g = unit_grid(n, 0.4);
        g.x_left = 0.25;
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = 0.4 + 0.1 * std::sin(2.0 * M_PI * g.center(i));
        CHECK(tv_grid(v) == doctest::Approx(0.4).epsilon(1e-5));
    }

    SUBCASE("invariance under constant shifts and reflection") {
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> uni(0.0, 0.5);
        std::vector<double> v(40);
        for (double& x : v) x = uni(rng);
        const double base = tv_grid(v);
        std::vector<double> shifted = v;
        for (double& x : shifted) x += 0.25;
        CHECK(tv_grid(shifted) == doctest::Approx(base).epsilon(1e-12));
        std::vector<double> reflected(v.rbegin(), v.rend());
        CHECK(tv_grid(reflected) == doctest::Approx(base).epsilon(1e-12));
    }
}
