#include "ntf/kernel.hpp"

#include <cmath>

#include "ntf/errors.hpp"

namespace ntf {

KernelSpec KernelSpec::exponential(double epsilon, double truncation_tol) {
    if (epsilon <= 0.0) throw AdmissibilityError("kernel: epsilon must be positive");
    KernelSpec k;
    k.kind = KernelKind::exponential;
    k.epsilon = epsilon;
    k.evaluate = [epsilon](double s) { return std::exp(-s / epsilon) / epsilon; };
    k.derivative = [epsilon](double s) { return -std::exp(-s / epsilon) / (epsilon * epsilon); };
    k.beta = 1.0 / epsilon;
    k.w0 = 1.0 / epsilon;
    k.truncation_tol = truncation_tol;
    k.s_max = epsilon * std::log(1.0 / truncation_tol);
    return k;
}

KernelSpec KernelSpec::tabulated(ScalarFn w, ScalarFn dw, double beta, double w0,
                                 double truncation_tol) {
    if (beta <= 0.0) throw AdmissibilityError("kernel: beta must be positive");
    if (w0 <= 0.0) throw AdmissibilityError("kernel: w(0) must be positive");
    KernelSpec k;
    k.kind = KernelKind::tabulated;
    k.epsilon = 0.0;
    k.evaluate = std::move(w);
    k.derivative = std::move(dw);
    k.beta = beta;
    k.w0 = w0;
    k.truncation_tol = truncation_tol;
    // Decay gives tail(s) <= w(s)/beta; grow then bisect for the cut point.
    double hi = 1.0;
    const double target = beta * truncation_tol;
    int guard = 0;
    while (k.evaluate(hi) > target && guard++ < 80) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (k.evaluate(mid) > target ? lo : hi) = mid;
        if (hi - lo < 1e-12 * hi) break;
    }
    k.s_max = hi;
    return k;
}

std::vector<std::string> kernel_violations(const KernelSpec& k) {
    std::vector<std::string> out;
    if (!k.evaluate || !k.derivative) {
        out.push_back("kernel: missing callable");
        return out;
    }
    if (k.beta <= 0.0) out.push_back("kernel: beta <= 0");
    if (k.w0 <= 0.0) out.push_back("kernel: w(0) <= 0");
    if (std::fabs(k.evaluate(0.0) - k.w0) > 1e-9 * std::max(1.0, k.w0)) {
        out.push_back("kernel: reported w0 disagrees with w(0)");
    }
    const double mass = adaptive_simpson(k.evaluate, 0.0, k.s_max, 1e-12);
    if (std::fabs(mass - 1.0) > 20.0 * k.truncation_tol + 1e-9) {
        out.push_back("kernel: mass " + std::to_string(mass) + " is not 1 within tolerance");
    }
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
        const double s = k.s_max * i / n;
        const double w = k.evaluate(s);
        if (w < -1e-12) {
            out.push_back("kernel: negative weight at s=" + std::to_string(s));
            break;
        }
        if (k.derivative(s) > -k.beta * w + 1e-9 * std::max(1.0, k.w0)) {
            out.push_back("kernel: decay condition w' <= -beta w fails at s=" + std::to_string(s));
            break;
        }
    }
    return out;
}

}  // namespace ntf
