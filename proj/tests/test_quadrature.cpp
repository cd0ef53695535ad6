#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ntf/quadrature.hpp"
#include "support.hpp"

using namespace ntf;
using test_support::greenshields_exponential;

namespace {

Grid1D plateau_grid(double x_left, double x_right, int n, double plateau) {
    Grid1D g;
    g.x_left = x_left;
    g.dx = (x_right - x_left) / n;
    g.n_cells = n;
    g.ext_left = plateau;
    g.ext_right = plateau;
    return g;
}

// Slowly advected bump with analytic values everywhere; plateau far field.
struct MovingBump {
    double background = 0.35;
    double amplitude = 0.25;
    double speed = 0.5;
    double operator()(double t, double x) const {
        const double r = x - speed * t;
        return background + amplitude * std::exp(-r * r);
    }
};

SpaceTimeField filled_field(const Grid1D& grid, double dt, int levels, const MovingBump& f) {
    SpaceTimeField field(grid, dt);
    for (int l = 0; l < levels; ++l) {
        std::vector<double> v(grid.n_cells);
        for (int i = 0; i < grid.n_cells; ++i) v[i] = f(l * dt, grid.center(i));
        field.append_level(v);
    }
    return field;
}

}  // namespace

TEST_CASE("kernel table bookkeeping") {
    const KernelSpec kernel = KernelSpec::exponential(0.25);
    const double dx = 0.05;
    const QuadratureScheme s = QuadratureScheme::build(kernel, dx);
    CHECK(s.ds == dx);
    CHECK(s.s_max >= kernel.s_max);

    double mass = 0.0;
    for (double w : s.w_weights) mass += w;
    CHECK(s.mass == doctest::Approx(mass).epsilon(1e-15));

    // Tail mass after truncation is below the kernel tolerance.
    CHECK(std::exp(-s.s_max / 0.25) <= kernel.truncation_tol * (1.0 + 1e-9));

    // Trapezoid consistency: the gap to the true integral shrinks 4x per halving.
    const double exact = 1.0 - std::exp(-s.s_max / 0.25);
    const double gap_coarse = std::fabs(s.mass - exact);
    const QuadratureScheme s2 = QuadratureScheme::build(kernel, dx / 2.0);
    const double exact2 = 1.0 - std::exp(-s2.s_max / 0.25);
    double mass2 = 0.0;
    for (double w : s2.w_weights) mass2 += w;
    const double gap_fine = std::fabs(mass2 - exact2);
    CHECK(gap_fine < 0.3 * gap_coarse);
}

TEST_CASE("constant history gives back the constant exactly") {
    const ModelParams p = greenshields_exponential(0.1, 0.3);
    const Grid1D grid = plateau_grid(-5.0, 5.0, 100, 0.42);
    SpaceTimeField field(grid, 0.02);
    for (int l = 0; l < 8; ++l) field.append_level(std::vector<double>(100, 0.42));
    const std::vector<double> q = compute_q(field, field.latest_time(), p);
    for (double v : q) CHECK(v == doctest::Approx(0.42).epsilon(1e-14));

    const std::vector<double> dyq = compute_dy_q(field, field.latest_time(), p);
    for (double v : dyq) CHECK(std::fabs(v) <= 1e-13);
}

TEST_CASE("static linear profile matches the closed form a + b x + b eps") {
    // Oracle: integral of (a + b(x+s)) e^{-s/eps}/eps ds = a + b x + b eps.
    const double a = 0.3, b = 0.005, eps = 0.25;
    const ModelParams p = greenshields_exponential(0.1, eps);
    const int n = 800;
    const Grid1D grid = plateau_grid(-20.0, 20.0, n, 0.3);
    std::vector<double> line(n);
    for (int i = 0; i < n; ++i) line[i] = a + b * grid.center(i);
    SpaceTimeField field(grid, 0.05);
    field.append_level(line);

    const std::vector<double> q = compute_q(field, 0.0, p);
    const std::vector<double> dyq = compute_dy_q(field, 0.0, p);
    for (int i = 0; i < n; ++i) {
        const double x = grid.center(i);
        if (x > 10.0) break;  // stay clear of the truncated look-ahead reach
        CHECK(std::fabs(q[i] - (a + b * x + b * eps)) <= 2e-5);
        // Trapezoid mass defect bounds the slope error by ~ b (ds/eps)^2 / 2.
        CHECK(std::fabs(dyq[i] - b) <= 5e-5);
    }
}

TEST_CASE("t = 0 reduces to the pure look-ahead average") {
    const double eps = 0.4;
    const ModelParams p = greenshields_exponential(0.1, eps);
    const Grid1D grid = plateau_grid(-8.0, 8.0, 320, 0.35);
    const MovingBump bump;
    SpaceTimeField field = filled_field(grid, 0.025, 1, bump);
    const std::vector<double> q = compute_q(field, 0.0, p);

    // Independent Simpson quadrature on the analytic profile.
    auto oracle = [&](double x) {
        const double s_hi = 40.0 * eps;
        const int m = 4000;
        const double h = s_hi / m;
        double acc = 0.0;
        for (int k = 0; k < m; ++k) {
            const double lo = k * h, hi = lo + h, mid = lo + 0.5 * h;
            auto f = [&](double s) { return bump(0.0, x + s) * std::exp(-s / eps) / eps; };
            acc += h / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
        }
        return acc;
    };
    for (int i = 40; i < 280; i += 16) {
        const double x = grid.center(i);
        CHECK(q[i] == doctest::Approx(oracle(x)).epsilon(5e-4));
    }
}

TEST_CASE("exponential step arithmetic") {
    CHECK(exponential_q_step(0.6, 0.4, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(exponential_q_step(0.3, 0.3, 1.7) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("characteristic recursion for q") {
    const ModelParams p = greenshields_exponential(0.1, 0.2);

    SUBCASE("constant history is a fixed point") {
        const Grid1D grid = plateau_grid(-4.0, 4.0, 80, 0.37);
        SpaceTimeField field(grid, 0.02);
        for (int l = 0; l < 11; ++l) field.append_level(std::vector<double>(80, 0.37));
        const std::vector<double> q = compute_q_exponential(field, field.latest_time(), p);
        for (double v : q) CHECK(v == doctest::Approx(0.37).epsilon(1e-12));
    }

    SUBCASE("agrees with the direct quadrature at first order") {
        const MovingBump bump;
        double errors[2];
        int idx = 0;
        for (int n : {160, 320}) {
            const Grid1D grid = plateau_grid(-8.0, 8.0, n, bump.background);
            const double dt = 0.5 * grid.dx;
            const int levels = static_cast<int>(std::lround(0.4 / dt)) + 1;
            const SpaceTimeField field = filled_field(grid, dt, levels, bump);
            const double t = field.latest_time();
            const std::vector<double> direct = compute_q(field, t, p);
            const std::vector<double> recursed = compute_q_exponential(field, t, p);
            double err = 0.0;
            for (int i = 0; i < n; ++i) err = std::max(err, std::fabs(direct[i] - recursed[i]));
            errors[idx++] = err;
        }
        CHECK(errors[0] / errors[1] > 1.4);  // roughly first order or better
        CHECK(errors[1] < errors[0]);
    }

    SUBCASE("kernel kind and delay are gated") {
        const Grid1D grid = plateau_grid(-4.0, 4.0, 40, 0.3);
        SpaceTimeField field(grid, 0.1);
        field.append_level(std::vector<double>(40, 0.3));
        ModelParams tab = p;
        tab.kernel = KernelSpec::tabulated(
            [](double s) { return 2.0 * std::exp(-2.0 * s); },
            [](double s) { return -4.0 * std::exp(-2.0 * s); }, 2.0, 2.0);
        CHECK_THROWS_AS(compute_q_exponential(field, 0.0, tab), NumericalError);
        ModelParams nodelay = p;
        nodelay.gamma = 0.0;
        CHECK_THROWS_AS(compute_q_exponential(field, 0.0, nodelay), NumericalError);
    }
}

TEST_CASE("path-derivative identity for exponential kernels") {
    // dy_q and (q - rho)/eps agree to O(dx + dt) on smooth histories, halving
    // under refinement.
    const double eps = 0.2;
    const ModelParams p = greenshields_exponential(0.1, eps);
    const MovingBump bump;
    double errors[2];
    int idx = 0;
    for (int n : {200, 400}) {
        const Grid1D grid = plateau_grid(-8.0, 8.0, n, bump.background);
        const double dt = 0.5 * grid.dx;
        const int levels = static_cast<int>(std::lround(0.3 / dt)) + 1;
        const SpaceTimeField field = filled_field(grid, dt, levels, bump);
        const double t = field.latest_time();
        const std::vector<double> q = compute_q(field, t, p);
        const std::vector<double> dyq = compute_dy_q(field, t, p);
        const std::vector<double>& rho = field.level_values(field.levels() - 1);
        double err = 0.0;
        for (int i = 0; i < n; ++i) {
            err = std::max(err, std::fabs(dyq[i] - (q[i] - rho[i]) / eps));
        }
        errors[idx++] = err;
        CHECK(err <= 0.5 * (grid.dx + dt));
    }
    CHECK(errors[0] / errors[1] > 1.5);
}

TEST_CASE("order and range properties") {
    const ModelParams p = greenshields_exponential(0.1, 0.3);
    const Grid1D grid = plateau_grid(-5.0, 5.0, 120, 0.4);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 0.15);

    SpaceTimeField low(grid, 0.05);
    Grid1D hi_grid = grid;
    hi_grid.ext_left = hi_grid.ext_right = 0.55;
    SpaceTimeField high(hi_grid, 0.05);
    double lo_min = 1.0, lo_max = 0.0;
    for (int l = 0; l < 4; ++l) {
        std::vector<double> a(120), b(120);
        for (int i = 0; i < 120; ++i) {
            a[i] = 0.3 + uni(rng);
            b[i] = a[i] + 0.05 + uni(rng) * 0.2;
            lo_min = std::min(lo_min, a[i]);
            lo_max = std::max(lo_max, a[i]);
        }
        low.append_level(a);
        high.append_level(b);
    }
    const double t = low.latest_time();
    const std::vector<double> q_low = compute_q(low, t, p);
    const std::vector<double> q_high = compute_q(high, t, p);
    for (int i = 0; i < 120; ++i) {
        CHECK(q_low[i] <= q_high[i] + 1e-14);  // positive weights preserve order
        CHECK(q_low[i] >= std::min(lo_min, 0.4) - 1e-12);
        CHECK(q_low[i] <= std::max(lo_max, 0.4) + 1e-12);
    }
}

TEST_CASE("coarse truncation is rejected") {
    ModelParams p = greenshields_exponential(0.1, 0.5);
    p.kernel.s_max = 0.25;  // captures less than half of the kernel mass
    const Grid1D grid = plateau_grid(-2.0, 2.0, 40, 0.3);
    SpaceTimeField field(grid, 0.1);
    field.append_level(std::vector<double>(40, 0.3));
    CHECK_THROWS_AS(compute_q(field, 0.0, p), NumericalError);
}
