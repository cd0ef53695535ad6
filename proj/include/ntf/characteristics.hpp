#pragma once

#include <vector>

#include "ntf/model.hpp"
#include "ntf/quadrature.hpp"
#include "ntf/solution.hpp"

namespace ntf {

struct PicardConfig {
    double window = 0.0;  // target window length; 0 picks min(gamma/2, 0.1/v_max)
    int max_iters = 50;
    double tol = 1e-9;  // sup-norm fixed-point tolerance
    int ode_steps = 2;  // characteristic-trace substeps per time level
};

// Characteristic trace in the path parameter tau, where the curve is
// tau -> (tau - gamma xi(tau), xi(tau)) and
//   d(xi)/d(tau) = V(q) = v(q) / (1 + gamma v(q)).
// Midpoint rule with n_steps steps of size dtau (negative walks backward in
// time). Throws when the trace overshoots t = 0 by more than one substep.
std::vector<SamplePoint> trace_characteristic(const SpaceTimeField& q_field, SamplePoint start,
                                              double dtau, int n_steps,
                                              const ModelParams& params);

/// q and its path derivative on a solver window, stored per level; time
/// samples interpolate linearly between levels, space samples use the plateau
/// ghosts of the grid.
struct WindowFields {
    const Grid1D* grid = nullptr;
    double t_begin = 0.0;
    double dt = 0.0;
    std::vector<std::vector<double>> q;    // levels t_begin + r*dt, r = 0..w
    std::vector<std::vector<double>> dyq;

    double q_at(double t, double x) const;
    double dyq_at(double t, double x) const;
};

// Semi-Lagrangian transport of z = rho (1 + gamma v(q)) across the window:
// for each node at each new level, trace the characteristic back one level,
// interpolate z at the foot, and integrate the source
//   dz/dt = -z v'(q) dy_q / (1 + gamma v(q))
// along the segment with one RK2 (midpoint) step. Returns levels 1..w.
// Ghost values of z are the plateau densities mapped through g.
std::vector<std::vector<double>> transport_z(const std::vector<double>& z_start,
                                             const WindowFields& fields,
                                             const ModelParams& params, int ode_steps);

// Fixed-point construction of the solution on [0, T]: Picard iteration of the
// quadrature -> transport -> recombination map on time windows, windows
// bisected when the sup-norm residual fails to contract, chained with the
// computed history as past-time data. dt must divide T (the driver adjusts).
SpaceTimeSolution solve_characteristics(const Grid1D& grid, const std::vector<double>& rho0,
                                        const ModelParams& params, double T, double dt,
                                        const PicardConfig& cfg = {});

}  // namespace ntf
