#pragma once

#include <string>
#include <vector>

#include "ntf/numerics.hpp"

namespace ntf {

enum class KernelKind { exponential, tabulated };

/// Look-ahead weight kernel w(s) on [0, inf): unit mass, nonnegative, with
/// exponential-type decay w'(s) <= -beta w(s). The semi-infinite integral is
/// truncated at s_max, where the decay bound tail(s) <= w(s)/beta guarantees
/// tail mass <= truncation_tol.
struct KernelSpec {
    KernelKind kind = KernelKind::exponential;
    double epsilon = 1.0;  // length scale of the exponential family; 0 for tabulated
    ScalarFn evaluate;     // w(s)
    ScalarFn derivative;   // w'(s)
    double beta = 1.0;     // decay rate
    double w0 = 1.0;       // w(0)
    double truncation_tol = 1e-10;
    double s_max = 0.0;

    // w(s) = exp(-s/epsilon)/epsilon; beta = w0 = 1/epsilon, s_max = epsilon*log(1/tol).
    static KernelSpec exponential(double epsilon, double truncation_tol = 1e-10);
    // Generic decaying kernel. beta and w0 are supplied by the caller (a decay
    // hypothesis, not derivable from samples) and validated against a dense
    // discrete check in kernel_violations().
    static KernelSpec tabulated(ScalarFn w, ScalarFn dw, double beta, double w0,
                                double truncation_tol = 1e-10);
};

// Unit mass to quadrature tolerance, nonnegativity, and the sampled decay
// condition w'(s) <= -beta w(s) on a dense grid. Empty result means pass.
std::vector<std::string> kernel_violations(const KernelSpec& k);

}  // namespace ntf
