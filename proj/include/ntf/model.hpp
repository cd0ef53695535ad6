#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ntf/grid.hpp"
#include "ntf/kernel.hpp"
#include "ntf/velocity.hpp"

namespace ntf {

/// Model parameter set: delay gamma (nonlocal information travels at speed
/// 1/gamma), the look-ahead kernel, and the velocity law.
struct ModelParams {
    double gamma = 0.0;
    KernelSpec kernel;
    VelocityModel velocity;
};

// Admissibility threshold for the delay parameter:
//   min{ 1/(3 (v_max + sup|v'|)), beta / (w(0) sup|v'|) }.
// Invariant under rescaling of the exponential kernel family (beta/w0 = 1).
double gamma_max(const VelocityModel& velocity, const KernelSpec& kernel);

// Variation-control condition on the velocity law and delay:
//   (1 - 2 gamma sup|v'|) min|v'| >= (1 + gamma v_max) sup|v''|.
bool check_bv_condition(const ModelParams& params);

// Monotone rescaling g(rho) = rho (1 + gamma v(rho)); g(0)=0, g(1)=1. It maps
// the density to the transported variable and defines the solution bounds.
// Requires gamma sup|v'| < 1 for monotonicity.
double g_map(double rho, const ModelParams& params);
double g_inverse(double z, const ModelParams& params);

// Solution bounds determined by the initial data:
//   rho_lo = min{ inf rho0, g^{-1}(inf rho0 (1 + gamma v(q0))) },
//   rho_hi = max{ sup rho0, g^{-1}(sup rho0 (1 + gamma v(q0))) },
// where q0 is the pure look-ahead average of rho0 and inf/sup include the
// plateau extensions. Constant data c returns (c, c) to root-finder accuracy.
std::pair<double, double> rho_bounds(const std::vector<double>& rho0, const Grid1D& grid,
                                     const ModelParams& params);

struct InitialDataReport {
    bool ok = false;
    double tv = 0.0;          // discrete variation of the data (always finite on a grid)
    int first_violation = -1; // grid index of the first failing constraint, -1 if none
    std::string reason;
};

// Solver-ready initial data: 0 <= rho0 <= 1 and 0 <= rho0 (1 + gamma v(q0)) <= 1
// pointwise to 1e-10, plus the (reported) discrete variation.
InitialDataReport validate_initial_data(const std::vector<double>& rho0, const Grid1D& grid,
                                        const ModelParams& params);

struct AdmissibilityReport {
    double gamma_max = 0.0;
    bool assumption1_ok = false;  // velocity law
    bool assumption2_ok = false;  // kernel
    bool gamma_ok = false;
    bool bv_condition_ok = false;
    bool initial_data_ok = false;
    double rho_min = 0.0;
    double rho_max = 1.0;
    std::vector<std::string> violations;
    bool solver_ready() const {
        return assumption1_ok && assumption2_ok && gamma_ok && initial_data_ok;
    }
};

AdmissibilityReport check_admissibility(const ModelParams& params,
                                        const std::vector<double>& rho0, const Grid1D& grid);

// Throws AdmissibilityError listing every violation if the configuration is
// not solver-ready.
void require_admissible(const ModelParams& params, const std::vector<double>& rho0,
                        const Grid1D& grid);

}  // namespace ntf
