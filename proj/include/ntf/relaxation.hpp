#pragma once

#include <vector>

#include "ntf/model.hpp"
#include "ntf/solution.hpp"

namespace ntf {

/// Cell averages of the density and the nonlocal variable for the 2x2
/// relaxation form of the exponential-kernel model:
///   d_t rho + d_x (rho v(q)) = 0
///   d_t q   - (1/gamma) d_x q = (rho - q) / (gamma epsilon)
struct RelaxState {
    std::vector<double> rho;
    std::vector<double> q;
};

/// Riemann invariants of the relaxation system:
///   u = ln(rho (1 + gamma v(q))),  h = -ln(1 + gamma v(q)),
/// so exp(u + h) recovers rho. Requires rho > 0.
struct RiemannInvariants {
    std::vector<double> u;
    std::vector<double> h;
};

// Strang-split step: half source (exact exponential decay of q toward rho),
// full transport (rho-flux rho v(q) upwinded from the left since v(q) >= 0;
// q advected with the rightward-looking upwind at speed -1/gamma), half
// source. Requires dt * max(1/gamma, v_max) / dx <= 0.9.
RelaxState step_relaxation(const RelaxState& state, double dt, const ModelParams& params,
                           const Grid1D& grid);

RiemannInvariants riemann_invariants(const RelaxState& state, const ModelParams& params);

// Inverse of h: the nonlocal density whose velocity matches the invariant,
// q(h) = v^{-1}((exp(-h) - 1)/gamma).
double q_of_h(double h, const ModelParams& params);

// Relaxation source in the diagonal variables:
//   Lambda(u, h) = v'(q(h)) exp(h) (exp(u+h) - q(h)).
double source_lambda(double u, double h, const ModelParams& params);

// Slack coefficient for the per-step variation check: growth up to
// kTvdSlackCoeff * dx * dt is attributed to discretization.
inline constexpr double kTvdSlackCoeff = 10.0;

struct TvdReport {
    double tv_old = 0.0;  // TV(u) + TV(h) before the step
    double tv_new = 0.0;
    double violation = 0.0;  // max(0, tv_new - tv_old - slack)
};

TvdReport check_tvd(const RiemannInvariants& before, const RiemannInvariants& after, double dx,
                    double dt);

// Finite-volume driver: q initialized from the look-ahead average of rho0,
// steps chosen from the CFL target, per-step variation rows collected into
// the telemetry whenever the density stays positive.
SpaceTimeSolution solve_relaxation(const Grid1D& grid, const std::vector<double>& rho0,
                                   const ModelParams& params, double T, double cfl = 0.8,
                                   bool collect_tvd = true);

}  // namespace ntf
