#include "ntf/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ntf {

namespace {

double path_speed(double v, double gamma) { return v / (1.0 + gamma * v); }

}  // namespace

std::vector<SamplePoint> trace_characteristic(const SpaceTimeField& q_field, SamplePoint start,
                                              double dtau, int n_steps,
                                              const ModelParams& params) {
    std::vector<SamplePoint> path;
    path.reserve(n_steps + 1);
    path.push_back(start);
    const double gamma = params.gamma;
    auto speed = [&](double t, double x) {
        return path_speed(params.velocity.evaluate(q_field.sample({t, x})), gamma);
    };
    SamplePoint p = start;
    for (int k = 0; k < n_steps; ++k) {
        const double v1 = speed(p.t, p.x);
        const double x_mid = p.x + 0.5 * dtau * v1;
        const double t_mid = p.t + 0.5 * dtau * (1.0 - gamma * v1);
        const double v2 = speed(std::max(t_mid, 0.0), x_mid);
        p.x += dtau * v2;
        p.t += dtau * (1.0 - gamma * v2);
        if (p.t < -std::fabs(dtau) * 1.0001) {
            throw NumericalError("trace_characteristic: step overshoots t=0; reduce the step");
        }
        path.push_back(p);
    }
    return path;
}

double WindowFields::q_at(double t, double x) const {
    double u = (t - t_begin) / dt;
    u = std::clamp(u, 0.0, static_cast<double>(q.size() - 1));
    const int r = std::min(static_cast<int>(u), static_cast<int>(q.size()) - 1);
    const double frac = u - r;
    const double lo = sample_profile(q[r], *grid, x);
    if (frac <= 1e-12 || r + 1 >= static_cast<int>(q.size())) return lo;
    return (1.0 - frac) * lo + frac * sample_profile(q[r + 1], *grid, x);
}

double WindowFields::dyq_at(double t, double x) const {
    double u = (t - t_begin) / dt;
    u = std::clamp(u, 0.0, static_cast<double>(dyq.size() - 1));
    const int r = std::min(static_cast<int>(u), static_cast<int>(dyq.size()) - 1);
    const double frac = u - r;
    // Path-derivative ghosts are zero: the plateau has no variation.
    auto interp = [&](const std::vector<double>& values) {
        const int n = static_cast<int>(values.size());
        double uu = (x - grid->x_left) / grid->dx - 0.5;
        const int i0 = static_cast<int>(std::floor(uu));
        const double f = uu - i0;
        auto node = [&](int i) { return (i < 0 || i >= n) ? 0.0 : values[i]; };
        return (1.0 - f) * node(i0) + f * node(i0 + 1);
    };
    const double lo = interp(dyq[r]);
    if (frac <= 1e-12 || r + 1 >= static_cast<int>(dyq.size())) return lo;
    return (1.0 - frac) * lo + frac * interp(dyq[r + 1]);
}

std::vector<std::vector<double>> transport_z(const std::vector<double>& z_start,
                                             const WindowFields& fields,
                                             const ModelParams& params, int ode_steps) {
    const Grid1D& grid = *fields.grid;
    const double dt = fields.dt;
    const double gamma = params.gamma;
    const int w = static_cast<int>(fields.q.size()) - 1;
    ode_steps = std::max(1, ode_steps);

    // Ghost z values: plateau densities in equilibrium with themselves.
    Grid1D z_grid = grid;
    z_grid.ext_left = g_map(grid.ext_left, params);
    z_grid.ext_right = g_map(grid.ext_right, params);

    auto source_coeff = [&](double t, double x) {
        const double q = fields.q_at(t, x);
        return -params.velocity.derivative(q) * fields.dyq_at(t, x) /
               (1.0 + gamma * params.velocity.evaluate(q));
    };

    std::vector<std::vector<double>> out;
    out.reserve(w);
    std::vector<double> z_prev = z_start;
    for (int r = 0; r < w; ++r) {
        const double t_from = fields.t_begin + r * dt;
        const double t_to = t_from + dt;
        std::vector<double> z_next(grid.n_cells);
        for (int i = 0; i < grid.n_cells; ++i) {
            // Backward trace at slope dx/dt = v(q) to the previous level,
            // keeping the position at the segment midpoint for the source.
            double x = grid.center(i);
            double t = t_to;
            const double h = -dt / ode_steps;
            double x_half = x;
            bool have_half = false;
            for (int k = 0; k < ode_steps; ++k) {
                const double v1 = params.velocity.evaluate(fields.q_at(t, x));
                const double v2 = params.velocity.evaluate(
                    fields.q_at(t + 0.5 * h, x + 0.5 * h * v1));
                const double x_new = x + h * v2;
                const double t_new = t + h;
                const double t_mid_target = t_from + 0.5 * dt;
                if (!have_half && t_new <= t_mid_target + 1e-12) {
                    const double lam = (t - t_mid_target) / (t - t_new);
                    x_half = x + lam * (x_new - x);
                    have_half = true;
                }
                x = x_new;
                t = t_new;
            }
            const double z_foot = sample_profile(z_prev, z_grid, x);
            const double a0 = source_coeff(t_from, x);
            const double z_mid = z_foot * (1.0 + 0.5 * dt * a0);
            const double am = source_coeff(t_from + 0.5 * dt, x_half);
            z_next[i] = z_foot + dt * am * z_mid;
        }
        out.push_back(z_next);
        z_prev = out.back();
    }
    return out;
}

namespace {

std::vector<double> recombine_density(const std::vector<double>& z, const std::vector<double>& q,
                                      const ModelParams& params) {
    std::vector<double> rho(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        rho[i] = z[i] / (1.0 + params.gamma * params.velocity.evaluate(q[i]));
    }
    return rho;
}

double sup_diff(const std::vector<std::vector<double>>& a,
                const std::vector<std::vector<double>>& b) {
    double m = 0.0;
    for (std::size_t l = 0; l < a.size(); ++l) {
        for (std::size_t i = 0; i < a[l].size(); ++i) {
            m = std::max(m, std::fabs(a[l][i] - b[l][i]));
        }
    }
    return m;
}

}  // namespace

SpaceTimeSolution solve_characteristics(const Grid1D& grid, const std::vector<double>& rho0,
                                        const ModelParams& params, double T, double dt,
                                        const PicardConfig& cfg) {
    require_admissible(params, rho0, grid);
    const int total_levels = static_cast<int>(std::lround(T / dt));
    if (std::fabs(total_levels * dt - T) > 1e-9 * std::max(1.0, T) || total_levels < 1) {
        throw NumericalError("solve_characteristics: dt must divide the horizon T");
    }

    const QuadratureScheme scheme = QuadratureScheme::build(params.kernel, grid.dx);
    const double v_max = params.velocity.v_max;
    double window_len = cfg.window;
    if (window_len <= 0.0) {
        window_len = 0.1 / v_max;
        if (params.gamma > 0.0) window_len = std::min(window_len, 0.5 * params.gamma);
    }
    int window_levels = std::max(1, static_cast<int>(std::lround(window_len / dt)));

    SpaceTimeField rho(grid, dt, 0);
    rho.append_level(rho0);
    SpaceTimeField q(grid, dt, 0);
    q.append_level(compute_q(rho, 0.0, params, scheme));

    SolveTelemetry telemetry;
    telemetry.solver = "characteristics";
    telemetry.dt = dt;
    telemetry.n_levels = total_levels + 1;

    int current = 0;
    while (current < total_levels) {
        const int w = std::min(window_levels, total_levels - current);
        const double t0 = rho.time_at(current);

        // Window guess: hold the last converged level.
        for (int r = 1; r <= w; ++r) {
            if (rho.levels() <= current + r) {
                rho.append_level(rho.level_values(current));
            } else {
                rho.set_level(current + r, rho.level_values(current));
            }
        }

        WindowFields fields;
        fields.grid = &grid;
        fields.t_begin = t0;
        fields.dt = dt;

        std::vector<double> z_start(grid.n_cells);
        {
            const std::vector<double>& q0 = q.level_values(current);
            const std::vector<double>& r0 = rho.level_values(current);
            for (int i = 0; i < grid.n_cells; ++i) {
                z_start[i] = r0[i] * (1.0 + params.gamma * params.velocity.evaluate(q0[i]));
            }
        }

        WindowTelemetry wt;
        wt.t_begin = t0;
        wt.t_end = t0 + w * dt;
        bool converged = false;
        std::vector<std::vector<double>> iterate(w);
        for (int r = 0; r < w; ++r) iterate[r] = rho.level_values(current);

        for (int m = 0; m < cfg.max_iters; ++m) {
            fields.q.assign(1, q.level_values(current));
            fields.dyq.assign(1, compute_dy_q(rho, t0, params, scheme));
            for (int r = 1; r <= w; ++r) {
                const double tr = rho.time_at(current + r);
                fields.q.push_back(compute_q(rho, tr, params, scheme));
                fields.dyq.push_back(compute_dy_q(rho, tr, params, scheme));
            }
            const std::vector<std::vector<double>> z = transport_z(z_start, fields, params,
                                                                   cfg.ode_steps);
            std::vector<std::vector<double>> updated(w);
            for (int r = 0; r < w; ++r) {
                updated[r] = recombine_density(z[r], fields.q[r + 1], params);
            }
            const double residual = sup_diff(updated, iterate);
            wt.residuals.push_back(residual);
            ++wt.iterations;
            iterate.swap(updated);
            for (int r = 0; r < w; ++r) rho.set_level(current + r + 1, iterate[r]);
            if (residual <= cfg.tol) {
                converged = true;
                break;
            }
        }

        if (!converged) {
            rho.truncate(current + 1);
            if (w == 1) {
                throw NumericalError(
                    "solve_characteristics: fixed-point iteration lost contraction at t=" +
                    std::to_string(t0) + " even on a single-level window");
            }
            window_levels = std::max(1, w / 2);
            continue;
        }

        telemetry.windows.push_back(std::move(wt));
        for (int r = 1; r <= w; ++r) {
            q.append_level(compute_q(rho, rho.time_at(current + r), params, scheme));
        }
        current += w;
    }

    return SpaceTimeSolution{std::move(rho), std::move(q), std::move(telemetry)};
}

}  // namespace ntf
