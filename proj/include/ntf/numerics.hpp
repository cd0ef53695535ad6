#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace ntf {

using ScalarFn = std::function<double(double)>;

struct SampledBounds {
    double min_val = 0.0;
    double max_val = 0.0;
    double min_abs = 0.0;
    double max_abs = 0.0;
};

// Evaluate f on n_points+1 uniformly spaced samples of [lo, hi] (endpoints
// included) and record the extrema.
SampledBounds sample_bounds(const ScalarFn& f, double lo, double hi, int n_points);

// Solve f(x) = target for monotone f on [lo, hi]. Newton steps refine a
// maintained bracket; bisection takes over whenever Newton leaves it.
// Accepts targets within a small tolerance outside f([lo,hi]) by clamping.
double invert_monotone(const ScalarFn& f, const ScalarFn& df, double lo, double hi,
                       double target, double x_tol = 1e-13);

// Adaptive Simpson quadrature with Richardson correction, absolute tolerance.
double adaptive_simpson(const ScalarFn& f, double a, double b, double tol);

// FNV-1a over bytes; used for deterministic run identifiers.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

}  // namespace ntf
