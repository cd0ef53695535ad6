#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ntf/diagnostics.hpp"
#include "support.hpp"

using namespace ntf;
using test_support::greenshields_exponential;

namespace {

SpaceTimeSolution constant_solution(double rho_c, double q_c, double T, int levels, int n = 64,
                                    double length = 8.0) {
    Grid1D g;
    g.x_left = -0.5 * length;
    g.dx = length / n;
    g.n_cells = n;
    g.ext_left = g.ext_right = rho_c;
    const double dt = T / (levels - 1);
    SpaceTimeSolution sol{SpaceTimeField(g, dt), SpaceTimeField(g, dt), {}};
    for (int l = 0; l < levels; ++l) {
        sol.rho.append_level(std::vector<double>(n, rho_c));
        sol.q.append_level(std::vector<double>(n, q_c));
    }
    return sol;
}

}  // namespace

TEST_CASE("entropy pair values") {
    const ModelParams p = greenshields_exponential(0.1, 0.2);
    const EntropyPair pair{p};

    SUBCASE("empty integrals vanish") {
        CHECK(pair.eta(0.0) == 0.0);
        CHECK(pair.psi(0.0) == 0.0);
    }

    SUBCASE("closed forms for the linear law") {
        // eta = 0.55 rho^2 - rho^3/30, psi = 0.55 rho^2 - (2.3/3) rho^3 + 0.05 rho^4.
        auto eta_exact = [](double r) { return 0.55 * r * r - r * r * r / 30.0; };
        auto psi_exact = [](double r) {
            return 0.55 * r * r - 2.3 / 3.0 * r * r * r + 0.05 * r * r * r * r;
        };
        CHECK(pair.eta(0.6) == doctest::Approx(0.1908).epsilon(1e-10));
        for (double r : {0.1, 0.37, 0.6, 0.95, 1.0}) {
            CHECK(pair.eta(r) == doctest::Approx(eta_exact(r)).epsilon(1e-10));
            CHECK(pair.psi(r) == doctest::Approx(psi_exact(r)).epsilon(1e-10));
        }
        CHECK_THROWS_AS(pair.eta(1.2), std::invalid_argument);
    }

    SUBCASE("flux compatibility psi' = eta' (rho v)'") {
        const double r = 0.37;
        const double h = 1e-5;
        const double psi_prime = (pair.psi(r + h) - pair.psi(r - h)) / (2.0 * h);
        const double eta_prime = (pair.eta(r + h) - pair.eta(r - h)) / (2.0 * h);
        CHECK(std::fabs(psi_prime - eta_prime * p.velocity.flux_derivative(r)) <= 1e-8);
    }

    SUBCASE("strict convexity on a dense sample") {
        const double h = 1e-3;
        for (int k = 1; k < 1000; ++k) {
            const double r = k / 1000.0;
            const double second = pair.eta(r + h) - 2.0 * pair.eta(r) + pair.eta(r - h);
            CHECK(second > 0.0);
        }
    }

    SUBCASE("bulk table agrees with the quadrature") {
        const EntropyTable table(p);
        for (int k = 0; k <= 500; ++k) {
            const double r = k / 500.0;
            CHECK(std::fabs(table.eta(r) - pair.eta(r)) <= 1e-12);
            CHECK(std::fabs(table.psi(r) - pair.psi(r)) <= 1e-12);
        }
    }
}

TEST_CASE("entropy residual functional") {
    const ModelParams p = greenshields_exponential(0.1, 0.2);

    SUBCASE("bank geometry") {
        const SpaceTimeSolution sol = constant_solution(0.4, 0.4, 1.0, 21);
        const auto bank = make_test_bank(1.0, sol.rho.grid());
        CHECK(bank.size() == 20);
    }

    SUBCASE("constant solutions give exactly zero") {
        const SpaceTimeSolution sol = constant_solution(0.4, 0.4, 1.0, 41);
        const auto bank = make_test_bank(1.0, sol.rho.grid());
        CHECK(std::fabs(entropy_residual(sol, p, bank)) <= 1e-13);
    }

    SUBCASE("support touching the boundary is an error") {
        const SpaceTimeSolution sol = constant_solution(0.4, 0.4, 1.0, 41);
        BumpTestFunction f;
        f.t_center = 0.5;
        f.t_scale = 0.7;  // sticks out of (0, 1)
        f.x_center = 0.0;
        f.x_scale = 1.0;
        CHECK_THROWS_AS(entropy_residual(sol, p, {f}), NumericalError);
    }
}

TEST_CASE("q-rho distance") {
    const ModelParams p = greenshields_exponential(0.1, 0.2);

    SUBCASE("equilibrium gives zero") {
        const SpaceTimeSolution sol = constant_solution(0.4, 0.4, 1.0, 11);
        const QRhoL1 r = q_rho_l1(sol, p, 1.0);
        CHECK(r.value == 0.0);
        CHECK(r.ratio == 0.0);
    }

    SUBCASE("frozen displacement integrates exactly") {
        const double length = 8.0;
        const SpaceTimeSolution sol = constant_solution(0.4, 0.5, 1.0, 11, 64, length);
        const QRhoL1 r = q_rho_l1(sol, p, 1.0);
        CHECK(r.value == doctest::Approx(0.1 * length * 1.0).epsilon(1e-13));
        CHECK(r.ratio == doctest::Approx(r.value / (1.0 * 0.2)).epsilon(1e-13));
    }
}

TEST_CASE("stability ratio") {
    SUBCASE("identical data is guarded") {
        const SpaceTimeSolution a = constant_solution(0.4, 0.4, 1.0, 11);
        const SpaceTimeSolution b = constant_solution(0.4, 0.4, 1.0, 11);
        const std::vector<double> rho0(64, 0.4);
        CHECK_THROWS_AS(stability_ratio(a, b, rho0, rho0, 1.0), NumericalError);
    }

    SUBCASE("frozen constant offset gives ratio T") {
        const SpaceTimeSolution a = constant_solution(0.4, 0.4, 1.0, 21);
        const SpaceTimeSolution b = constant_solution(0.401, 0.401, 1.0, 21);
        const std::vector<double> rho0a(64, 0.4);
        const std::vector<double> rho0b(64, 0.401);
        const StabilityResult r = stability_ratio(a, b, rho0a, rho0b, 1.0);
        CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.theorem_shape == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("bounds violation scan") {
    SpaceTimeSolution sol = constant_solution(0.4, 0.4, 1.0, 5);
    CHECK(bounds_violation(sol, 0.3, 0.6) == 0.0);
    std::vector<double> spike(64, 0.4);
    spike[10] = 0.7;
    sol.rho.set_level(2, spike);
    CHECK(bounds_violation(sol, 0.3, 0.6) == doctest::Approx(0.1).epsilon(1e-14));
    spike[10] = 0.05;
    sol.rho.set_level(3, spike);
    CHECK(bounds_violation(sol, 0.3, 0.6) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("probe-ladder distance") {
    const SpaceTimeSolution a = constant_solution(0.40, 0.4, 1.0, 11, 64, 8.0);
    const SpaceTimeSolution b = constant_solution(0.45, 0.4, 1.0, 17, 64, 8.0);
    CHECK(l1_spacetime_distance(a.rho, b.rho, 1.0) ==
          doctest::Approx(0.05 * 8.0).epsilon(1e-12));
}

TEST_CASE("full report on a constant state") {
    const ModelParams p = greenshields_exponential(0.1, 0.2);
    const SpaceTimeSolution sol = constant_solution(0.3, 0.3, 1.0, 41);
    const std::vector<double> rho0(64, 0.3);
    const DiagnosticsReport r = diagnose(sol, p, rho0, 1.0);
    CHECK(r.rho_min == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(r.rho_max == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(r.bounds_violation <= 1e-12);
    CHECK(r.tv_spacetime == 0.0);
    CHECK(r.q_rho_value == 0.0);
    CHECK(std::fabs(r.entropy_min) <= 1e-13);
}
