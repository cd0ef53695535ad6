#include "ntf/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ntf/quadrature.hpp"

namespace ntf {

namespace {

void source_half_step(RelaxState& s, double dt, const ModelParams& params) {
    const double decay = std::exp(-0.5 * dt / (params.gamma * params.kernel.epsilon));
    for (std::size_t i = 0; i < s.q.size(); ++i) {
        s.q[i] = s.rho[i] + (s.q[i] - s.rho[i]) * decay;
    }
}

}  // namespace

RelaxState step_relaxation(const RelaxState& state, double dt, const ModelParams& params,
                           const Grid1D& grid) {
    if (params.kernel.kind != KernelKind::exponential) {
        throw AdmissibilityError("step_relaxation: exponential kernel required");
    }
    if (!(params.gamma > 0.0)) {
        throw AdmissibilityError("step_relaxation: requires gamma > 0");
    }
    const double cfl = dt * std::max(1.0 / params.gamma, params.velocity.v_max) / grid.dx;
    if (cfl > 0.9 + 1e-12) {
        throw NumericalError("step_relaxation: CFL number " + std::to_string(cfl) +
                             " exceeds 0.9");
    }
    const int n = grid.n_cells;
    RelaxState s = state;
    source_half_step(s, dt, params);

    auto v = [&](double q) { return params.velocity.evaluate(q); };
    RelaxState next;
    next.rho.resize(n);
    next.q.resize(n);
    // rho: upwind flux from the left cell; ghosts are the plateau in
    // equilibrium (q ghost = rho ghost).
    const double flux_in = grid.ext_left * v(grid.ext_left);
    double flux_left = flux_in;
    const double lam = dt / grid.dx;
    for (int i = 0; i < n; ++i) {
        const double flux_right = s.rho[i] * v(s.q[i]);
        next.rho[i] = s.rho[i] - lam * (flux_right - flux_left);
        flux_left = flux_right;
    }
    // q: leftward wave at speed -1/gamma, upwind looks to the right.
    const double mu = dt / (params.gamma * grid.dx);
    for (int i = 0; i < n; ++i) {
        const double right = (i + 1 < n) ? s.q[i + 1] : grid.ext_right;
        next.q[i] = s.q[i] + mu * (right - s.q[i]);
    }

    source_half_step(next, dt, params);
    for (int i = 0; i < n; ++i) {
        if (next.rho[i] < -1e-10 || next.rho[i] > 1.0 + 1e-10) {
            throw NumericalError("step_relaxation: density " + std::to_string(next.rho[i]) +
                                 " left [0,1] at cell " + std::to_string(i));
        }
    }
    return next;
}

RiemannInvariants riemann_invariants(const RelaxState& state, const ModelParams& params) {
    RiemannInvariants inv;
    const std::size_t n = state.rho.size();
    inv.u.resize(n);
    inv.h.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(state.rho[i] > 0.0)) {
            throw NumericalError("riemann_invariants: density must be positive");
        }
        const double one_gv = 1.0 + params.gamma * params.velocity.evaluate(state.q[i]);
        inv.u[i] = std::log(state.rho[i] * one_gv);
        inv.h[i] = -std::log(one_gv);
    }
    return inv;
}

double q_of_h(double h, const ModelParams& params) {
    const double speed = (std::exp(-h) - 1.0) / params.gamma;
    return velocity_inverse(params.velocity, speed);
}

double source_lambda(double u, double h, const ModelParams& params) {
    const double q = q_of_h(h, params);
    return params.velocity.derivative(q) * std::exp(h) * (std::exp(u + h) - q);
}

TvdReport check_tvd(const RiemannInvariants& before, const RiemannInvariants& after, double dx,
                    double dt) {
    TvdReport r;
    r.tv_old = tv_grid(before.u) + tv_grid(before.h);
    r.tv_new = tv_grid(after.u) + tv_grid(after.h);
    const double slack = kTvdSlackCoeff * dx * dt;
    r.violation = std::max(0.0, r.tv_new - r.tv_old - slack);
    return r;
}

SpaceTimeSolution solve_relaxation(const Grid1D& grid, const std::vector<double>& rho0,
                                   const ModelParams& params, double T, double cfl,
                                   bool collect_tvd) {
    if (params.kernel.kind != KernelKind::exponential) {
        throw AdmissibilityError("solve_relaxation: exponential kernel required");
    }
    if (!(params.gamma > 0.0)) {
        throw AdmissibilityError("solve_relaxation: requires gamma > 0 (delayed information)");
    }
    require_admissible(params, rho0, grid);

    const double speed = std::max(1.0 / params.gamma, params.velocity.v_max);
    const double dt_cap = cfl * grid.dx / speed;
    const int steps = std::max(1, static_cast<int>(std::ceil(T / dt_cap - 1e-12)));
    const double dt = T / steps;

    SpaceTimeField rho(grid, dt, 0);
    SpaceTimeField q(grid, dt, 0);
    SpaceTimeField init(grid, 1.0, 0);
    init.append_level(rho0);
    RelaxState state{rho0, compute_q(init, 0.0, params)};
    rho.append_level(state.rho);
    q.append_level(state.q);

    SolveTelemetry telemetry;
    telemetry.solver = "relaxation";
    telemetry.dt = dt;
    telemetry.n_levels = steps + 1;

    const bool positive = *std::min_element(state.rho.begin(), state.rho.end()) > 1e-12 &&
                          grid.ext_left > 1e-12 && grid.ext_right > 1e-12;
    RiemannInvariants prev_inv;
    if (collect_tvd && positive) prev_inv = riemann_invariants(state, params);

    for (int k = 0; k < steps; ++k) {
        state = step_relaxation(state, dt, params, grid);
        rho.append_level(state.rho);
        q.append_level(state.q);
        if (collect_tvd && positive) {
            const RiemannInvariants inv = riemann_invariants(state, params);
            const TvdReport rep = check_tvd(prev_inv, inv, grid.dx, dt);
            telemetry.tvd.push_back(
                {rho.time_at(k + 1), tv_grid(inv.u), tv_grid(inv.h), rep.violation});
            prev_inv = inv;
        }
    }
    return SpaceTimeSolution{std::move(rho), std::move(q), std::move(telemetry)};
}

}  // namespace ntf
