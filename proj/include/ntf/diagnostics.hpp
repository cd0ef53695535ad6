#pragma once

#include <vector>

#include "ntf/model.hpp"
#include "ntf/solution.hpp"

namespace ntf {

/// Strictly convex entropy / entropy-flux pair for the local limit law:
///   eta(rho) = integral_0^rho r (1 + gamma v(r)) dr,
///   psi(rho) = integral_0^rho r (1 + gamma v(r)) (v(r) + r v'(r)) dr,
/// evaluated by adaptive quadrature to 1e-12 absolute.
struct EntropyPair {
    ModelParams params;
    double eta(double rho) const;
    double psi(double rho) const;
};

/// Cumulative-Simpson table of (eta, psi) on [0,1] with Hermite interpolation
/// (the integrands are the exact derivatives), for bulk evaluation inside the
/// residual functional. Agrees with EntropyPair to ~1e-13.
class EntropyTable {
   public:
    explicit EntropyTable(const ModelParams& params, int n_intervals = 4096);
    double eta(double rho) const;
    double psi(double rho) const;

   private:
    double interp(const std::vector<double>& cum, const std::vector<double>& deriv,
                  double rho) const;
    int n_;
    double h_;
    std::vector<double> eta_cum_, eta_deriv_;
    std::vector<double> psi_cum_, psi_deriv_;
};

/// Tensor-product C^2 bump ((1-r^2)^3 on |r|<1) centered at (t_center,
/// x_center) with half-widths (t_scale, x_scale); compactly supported test
/// function for the entropy functional.
struct BumpTestFunction {
    double t_center = 0.0;
    double t_scale = 1.0;
    double x_center = 0.0;
    double x_scale = 1.0;
    double value(double t, double x) const;
};

// 5 space-time placements x 4 scales, supports strictly inside
// (0,T) x interior.
std::vector<BumpTestFunction> make_test_bank(double T, const Grid1D& grid);

// Minimum over the bank of the discrete entropy functional
//   sum eta(rho) D_t phi + psi(rho) D_x phi  * dx dt,
// with centered differences of phi on the solution's grid (so constant states
// give exactly zero by telescoping). Nonnegative up to O(epsilon + dx) for
// admissible solutions. Throws if a test function touches the boundary.
double entropy_residual(const SpaceTimeSolution& solution, const ModelParams& params,
                        const std::vector<BumpTestFunction>& bank);

// Space-time L1 integral of |q - rho| over [0, T]; ratio normalizes by T*eps.
struct QRhoL1 {
    double value = 0.0;
    double ratio = 0.0;
};
QRhoL1 q_rho_l1(const SpaceTimeSolution& solution, const ModelParams& params, double T);

// Space-time L1 distance between two trajectories sampled on a fixed ladder
// of probe times (trapezoid in time), so solutions with different dt or grids
// can be compared deterministically.
double l1_spacetime_distance(const SpaceTimeField& a, const SpaceTimeField& b, double T,
                             int probes = 81);

struct StabilityResult {
    double ratio = 0.0;          // space-time L1 distance / initial L1 distance
    double theorem_shape = 0.0;  // 1 + TV(rho0_a) + TV(rho0_b)
    double initial_l1 = 0.0;
};
// Guarded against identical initial data (throws NumericalError).
StabilityResult stability_ratio(const SpaceTimeSolution& a, const SpaceTimeSolution& b,
                                const std::vector<double>& rho0_a,
                                const std::vector<double>& rho0_b, double T);

// Largest excess of the density trajectory beyond [rho_min, rho_max].
double bounds_violation(const SpaceTimeSolution& solution, double rho_min, double rho_max);

struct DiagnosticsReport {
    double rho_min = 0.0;
    double rho_max = 1.0;
    double bounds_violation = 0.0;
    double tv0 = 0.0;  // variation of the initial data
    double tv_spacetime = 0.0;
    double tv_ratio = 0.0;  // against T (1 + 1/rho_min) TV(rho0)
    double q_rho_value = 0.0;
    double q_rho_ratio = 0.0;
    double entropy_min = 0.0;
};

DiagnosticsReport diagnose(const SpaceTimeSolution& solution, const ModelParams& params,
                           const std::vector<double>& rho0, double T);

}  // namespace ntf
