#include "ntf/lwr.hpp"

#include <algorithm>
#include <cmath>

#include "ntf/errors.hpp"
#include "ntf/numerics.hpp"

namespace ntf {

GodunovFlux::GodunovFlux(const VelocityModel& velocity) : velocity_(&velocity) {
    // Roots of f' on (0,1): scan for sign changes, then bisect.
    const int scan = 256;
    double prev_x = 0.0;
    double prev_d = velocity.flux_derivative(0.0);
    for (int k = 1; k <= scan; ++k) {
        const double x = static_cast<double>(k) / scan;
        const double d = velocity.flux_derivative(x);
        if (prev_d == 0.0) critical_points_.push_back(prev_x);
        if (prev_d * d < 0.0) {
            double a = prev_x;
            double b = x;
            double fa = prev_d;
            for (int it = 0; it < 100; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = velocity.flux_derivative(m);
                if (fa * fm <= 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
                if (b - a < 1e-13) break;
            }
            critical_points_.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_d = d;
    }
}

double GodunovFlux::operator()(double rho_left, double rho_right) const {
    const VelocityModel& v = *velocity_;
    if (rho_left == rho_right) return v.flux(rho_left);
    const double a = std::min(rho_left, rho_right);
    const double b = std::max(rho_left, rho_right);
    double best = v.flux(a);
    const bool take_min = rho_left <= rho_right;
    auto consider = [&](double x) {
        const double f = v.flux(x);
        best = take_min ? std::min(best, f) : std::max(best, f);
    };
    consider(b);
    for (double c : critical_points_) {
        if (c > a && c < b) consider(c);
    }
    return best;
}

double godunov_flux(double rho_left, double rho_right, const VelocityModel& velocity) {
    return GodunovFlux(velocity)(rho_left, rho_right);
}

SpaceTimeSolution solve_lwr(const Grid1D& grid, const std::vector<double>& rho0,
                            const VelocityModel& velocity, double T, double cfl) {
    grid.validate();
    const GodunovFlux flux(velocity);
    const double max_speed =
        std::max(1e-12, sample_bounds([&](double r) { return velocity.flux_derivative(r); }, 0.0,
                                      1.0, 10000)
                            .max_abs);
    const double dt_cap = cfl * grid.dx / max_speed;
    const int steps = std::max(1, static_cast<int>(std::ceil(T / dt_cap - 1e-12)));
    const double dt = T / steps;
    if (dt * max_speed / grid.dx > 0.9 + 1e-12) {
        throw NumericalError("solve_lwr: CFL target violated");
    }

    const int n = grid.n_cells;
    SpaceTimeField rho(grid, dt, 0);
    rho.append_level(rho0);
    SpaceTimeField q(grid, dt, 0);
    q.append_level(rho0);

    std::vector<double> state = rho0;
    std::vector<double> next(n);
    const double lam = dt / grid.dx;
    for (int k = 0; k < steps; ++k) {
        double flux_left = flux(grid.ext_left, state[0]);
        for (int i = 0; i < n; ++i) {
            const double right_state = (i + 1 < n) ? state[i + 1] : grid.ext_right;
            const double flux_right = flux(state[i], right_state);
            next[i] = state[i] - lam * (flux_right - flux_left);
            flux_left = flux_right;
        }
        state.swap(next);
        rho.append_level(state);
        q.append_level(state);
    }

    SolveTelemetry telemetry;
    telemetry.solver = "lwr";
    telemetry.dt = dt;
    telemetry.n_levels = steps + 1;
    return SpaceTimeSolution{std::move(rho), std::move(q), std::move(telemetry)};
}

}  // namespace ntf
