#include "ntf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ntf/errors.hpp"

namespace ntf {

SampledBounds sample_bounds(const ScalarFn& f, double lo, double hi, int n_points) {
    SampledBounds b;
    const double h = (hi - lo) / n_points;
    for (int i = 0; i <= n_points; ++i) {
        const double x = (i == n_points) ? hi : lo + i * h;
        const double y = f(x);
        if (i == 0) {
            b.min_val = b.max_val = y;
            b.min_abs = b.max_abs = std::fabs(y);
        } else {
            b.min_val = std::min(b.min_val, y);
            b.max_val = std::max(b.max_val, y);
            b.min_abs = std::min(b.min_abs, std::fabs(y));
            b.max_abs = std::max(b.max_abs, std::fabs(y));
        }
    }
    return b;
}

double invert_monotone(const ScalarFn& f, const ScalarFn& df, double lo, double hi,
                       double target, double x_tol) {
    double a = lo;
    double b = hi;
    double fa = f(a);
    double fb = f(b);
    const bool increasing = fb >= fa;
    const double f_lo = std::min(fa, fb);
    const double f_hi = std::max(fa, fb);
    const double range = std::max(1.0, f_hi - f_lo);
    if (target < f_lo - 1e-9 * range || target > f_hi + 1e-9 * range) {
        throw NumericalError("invert_monotone: target outside the function range");
    }
    target = std::clamp(target, f_lo, f_hi);

    // Signed residual that is negative left of the root, positive right of it.
    auto resid = [&](double fx) { return increasing ? fx - target : target - fx; };
    if (resid(fa) >= 0.0) return a;
    if (resid(fb) <= 0.0) return b;

    double x = 0.5 * (a + b);
    for (int iter = 0; iter < 200; ++iter) {
        const double fx = f(x);
        const double r = resid(fx);
        if (r > 0.0) {
            b = x;
        } else if (r < 0.0) {
            a = x;
        } else {
            return x;
        }
        if (b - a <= x_tol) break;
        const double d = df(x);
        double candidate = (d != 0.0) ? x - (fx - target) / d : 0.5 * (a + b);
        if (!(candidate > a && candidate < b)) candidate = 0.5 * (a + b);
        if (std::fabs(candidate - x) <= 0.25 * x_tol && b - a > 4.0 * x_tol) {
            candidate = 0.5 * (a + b);  // Newton stalled; keep shrinking the bracket
        }
        x = candidate;
    }
    return 0.5 * (a + b);
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const ScalarFn& f, double a, double m, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const ScalarFn& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, 48);
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return std::string(buf);
}

}  // namespace ntf
