#include "ntf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ntf {

QuadratureScheme QuadratureScheme::build(const KernelSpec& kernel, double dx) {
    QuadratureScheme s;
    s.ds = dx;
    const int n_intervals = std::max(1, static_cast<int>(std::ceil(kernel.s_max / dx - 1e-12)));
    s.s_max = n_intervals * dx;
    s.w_weights.resize(n_intervals + 1);
    s.dw_weights.resize(n_intervals + 1);
    for (int j = 0; j <= n_intervals; ++j) {
        const double tw = (j == 0 || j == n_intervals) ? 0.5 * dx : dx;
        const double sj = j * dx;
        s.w_weights[j] = tw * kernel.evaluate(sj);
        s.dw_weights[j] = tw * kernel.derivative(sj);
    }
    double mass = 0.0;
    double dmass = 0.0;
    for (int j = 0; j <= n_intervals; ++j) {
        mass += s.w_weights[j];
        dmass -= s.dw_weights[j];
    }
    s.mass = mass;
    s.boundary_mass = dmass;
    return s;
}

namespace {

struct PathSampler {
    // Per s-node time bracket into the density history; shared by every x.
    std::vector<const std::vector<double>*> lower;
    std::vector<const std::vector<double>*> upper;
    std::vector<double> frac;

    PathSampler(const SpaceTimeField& rho, double t, double gamma, std::size_t n_nodes,
                double ds) {
        lower.resize(n_nodes);
        upper.resize(n_nodes);
        frac.resize(n_nodes);
        for (std::size_t j = 0; j < n_nodes; ++j) {
            const double tau = t - gamma * static_cast<double>(j) * ds;
            const SpaceTimeField::TimeBracket b = rho.bracket_time(tau);
            lower[j] = &rho.level_values(b.lower);
            upper[j] = &rho.level_values(b.upper);
            frac[j] = b.frac;
        }
    }

    double value(const Grid1D& grid, std::size_t j, int column) const {
        if (column >= grid.n_cells) return grid.ext_right;
        const double lo = (*lower[j])[column];
        const double f = frac[j];
        if (f == 0.0) return lo;
        return (1.0 - f) * lo + f * (*upper[j])[column];
    }
};

}  // namespace

std::vector<double> compute_q(const SpaceTimeField& rho, double t, const ModelParams& params,
                              const QuadratureScheme& scheme) {
    const Grid1D& grid = rho.grid();
    const double tol = params.kernel.truncation_tol;
    if (scheme.mass < 1.0 - 10.0 * tol) {
        throw NumericalError("compute_q: captured kernel mass " + std::to_string(scheme.mass) +
                             " is too small; truncation too coarse");
    }
    const std::size_t n_nodes = scheme.w_weights.size();
    const PathSampler path(rho, t, params.gamma, n_nodes, scheme.ds);
    std::vector<double> q(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_nodes; ++j) {
            acc += scheme.w_weights[j] * path.value(grid, j, i + static_cast<int>(j));
        }
        q[i] = acc / scheme.mass;
    }
    return q;
}

std::vector<double> compute_q(const SpaceTimeField& rho, double t, const ModelParams& params) {
    return compute_q(rho, t, params, QuadratureScheme::build(params.kernel, rho.grid().dx));
}

std::vector<double> compute_dy_q(const SpaceTimeField& rho, double t, const ModelParams& params,
                                 const QuadratureScheme& scheme) {
    const Grid1D& grid = rho.grid();
    const std::size_t n_nodes = scheme.w_weights.size();
    const PathSampler path(rho, t, params.gamma, n_nodes, scheme.ds);
    std::vector<double> dyq(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_nodes; ++j) {
            acc -= scheme.dw_weights[j] * path.value(grid, j, i + static_cast<int>(j));
        }
        dyq[i] = acc - scheme.boundary_mass * path.value(grid, 0, i);
    }
    return dyq;
}

std::vector<double> compute_dy_q(const SpaceTimeField& rho, double t, const ModelParams& params) {
    return compute_dy_q(rho, t, params, QuadratureScheme::build(params.kernel, rho.grid().dx));
}

double exponential_q_step(double q_upstream, double rho_bar, double decay_exponent) {
    return rho_bar + (q_upstream - rho_bar) * std::exp(-decay_exponent);
}

std::vector<double> compute_q_exponential(const SpaceTimeField& rho, double t,
                                          const ModelParams& params) {
    if (params.kernel.kind != KernelKind::exponential) {
        throw NumericalError("compute_q_exponential: kernel kind mismatch (exponential required)");
    }
    if (!(params.gamma > 0.0)) {
        throw NumericalError("compute_q_exponential: requires gamma > 0");
    }
    const Grid1D& grid = rho.grid();
    const double dt = rho.dt();
    const int target = static_cast<int>(std::lround(t / dt));
    if (std::fabs(t - target * dt) > 1e-9 * std::max(1.0, dt) || target >= rho.levels()) {
        throw NumericalError("compute_q_exponential: t is not a stored level time");
    }
    const double eps = params.kernel.epsilon;
    const double decay = dt / (params.gamma * eps);
    const QuadratureScheme scheme = QuadratureScheme::build(params.kernel, grid.dx);

    std::vector<double> q = compute_q(rho, 0.0, params, scheme);
    std::vector<double> next(grid.n_cells);
    for (int l = 0; l < target; ++l) {
        const double t_mid = rho.time_at(l) + 0.5 * dt;
        for (int i = 0; i < grid.n_cells; ++i) {
            const double x = grid.center(i);
            const double q_up = sample_profile(q, grid, x + dt / params.gamma);
            const double rho_bar = rho.sample({t_mid, x + 0.5 * dt / params.gamma});
            next[i] = exponential_q_step(q_up, rho_bar, decay);
        }
        q.swap(next);
    }
    return q;
}

}  // namespace ntf
