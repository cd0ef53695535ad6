#pragma once

#include <string>
#include <vector>

#include "ntf/numerics.hpp"

namespace ntf {

/// Decreasing velocity-density law v(rho) on [0,1] together with cached
/// derivative bounds. Bounds are obtained by dense sampling (1e4 intervals);
/// callers may overwrite them when sharper analytic values are available.
struct VelocityModel {
    std::string name;
    ScalarFn evaluate;           // v(rho)
    ScalarFn derivative;         // v'(rho)
    ScalarFn second_derivative;  // v''(rho)
    double v_max = 0.0;          // v(0)
    double sup_dv = 0.0;         // max |v'| over [0,1]
    double sup_ddv = 0.0;        // max |v''| over [0,1]
    double min_abs_dv = 0.0;     // min |v'| over [0,1]

    double flux(double rho) const { return rho * evaluate(rho); }  // f = rho v(rho)
    double flux_derivative(double rho) const { return evaluate(rho) + rho * derivative(rho); }

    // v(rho) = free_speed * (1 - rho)
    static VelocityModel greenshields(double free_speed = 1.0);
    // v(rho) = free_speed * (1 - rho^2); not strictly decreasing in slope at 0,
    // useful as a law that violates the variation-control condition.
    static VelocityModel quadratic(double free_speed = 1.0);
    static VelocityModel from_callables(std::string name, ScalarFn v, ScalarFn dv, ScalarFn ddv);
};

// Checks the standing assumptions on the law: strictly decreasing on a dense
// grid, v(0) = v_max and v(1) = 0 to 1e-12. Empty result means pass.
std::vector<std::string> velocity_violations(const VelocityModel& v);

// Inverse of the (decreasing) law on [0,1]; speed must lie in [v(1), v(0)].
double velocity_inverse(const VelocityModel& v, double speed);

}  // namespace ntf
