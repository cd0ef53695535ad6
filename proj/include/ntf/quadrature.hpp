#pragma once

#include <vector>

#include "ntf/grid.hpp"
#include "ntf/model.hpp"

namespace ntf {

/// Composite-trapezoid kernel table on the s-grid aligned with the cell width,
/// so look-ahead samples land on cell centers and only time interpolation is
/// needed along the delay path.
struct QuadratureScheme {
    double ds = 0.0;     // = dx
    double s_max = 0.0;  // truncation point, tail mass <= kernel truncation_tol
    std::vector<double> w_weights;   // trapezoid weight * w(s_j)
    std::vector<double> dw_weights;  // trapezoid weight * w'(s_j)
    double mass = 0.0;           // sum of w_weights; close to the unit kernel mass
    double boundary_mass = 0.0;  // -sum of dw_weights; discrete analog of w(0)

    static QuadratureScheme build(const KernelSpec& kernel, double dx);
};

// Nonlocal average along the delayed look-ahead path:
//   q(t,x) = integral of rho(t - gamma s, x + s) w(s) ds,
// with the density held at its initial level for times below the stored
// window. Renormalized by the captured kernel mass so constant states are
// reproduced exactly. Throws when the captured mass falls more than
// 10 * truncation_tol short of 1.
std::vector<double> compute_q(const SpaceTimeField& rho, double t, const ModelParams& params);
std::vector<double> compute_q(const SpaceTimeField& rho, double t, const ModelParams& params,
                              const QuadratureScheme& scheme);

// Directional derivative of q along the path (d_x - gamma d_t), computed from
// the integrated-by-parts form
//   -w(0) rho(t,x) - integral of rho(t - gamma s, x + s) w'(s) ds,
// with the local coefficient replaced by the discrete mass of -w' so constant
// states give exactly zero. For exponential kernels the result equals
// (q - rho)/epsilon up to the quadrature mass defect.
std::vector<double> compute_dy_q(const SpaceTimeField& rho, double t, const ModelParams& params);
std::vector<double> compute_dy_q(const SpaceTimeField& rho, double t, const ModelParams& params,
                                 const QuadratureScheme& scheme);

// One exact source step along the q-characteristic x - t/gamma = const:
//   q_new = rho_bar + (q_upstream - rho_bar) * exp(-decay_exponent).
double exponential_q_step(double q_upstream, double rho_bar, double decay_exponent);

// Exponential-kernel recursion for q: marches the exact characteristic update
// level by level from the initial look-ahead average up to time t (a stored
// level of the density field). Exponential kernels and gamma > 0 only.
std::vector<double> compute_q_exponential(const SpaceTimeField& rho, double t,
                                          const ModelParams& params);

}  // namespace ntf
