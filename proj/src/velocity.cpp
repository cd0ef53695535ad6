#include "ntf/velocity.hpp"

#include <cmath>

#include "ntf/errors.hpp"

namespace ntf {

namespace {
constexpr int kSamplePoints = 10000;
}

VelocityModel VelocityModel::from_callables(std::string name, ScalarFn v, ScalarFn dv,
                                            ScalarFn ddv) {
    VelocityModel m;
    m.name = std::move(name);
    m.evaluate = std::move(v);
    m.derivative = std::move(dv);
    m.second_derivative = std::move(ddv);
    m.v_max = m.evaluate(0.0);
    const SampledBounds d1 = sample_bounds(m.derivative, 0.0, 1.0, kSamplePoints);
    const SampledBounds d2 = sample_bounds(m.second_derivative, 0.0, 1.0, kSamplePoints);
    m.sup_dv = d1.max_abs;
    m.min_abs_dv = d1.min_abs;
    m.sup_ddv = d2.max_abs;
    return m;
}

VelocityModel VelocityModel::greenshields(double free_speed) {
    return from_callables(
        "greenshields", [free_speed](double rho) { return free_speed * (1.0 - rho); },
        [free_speed](double) { return -free_speed; }, [](double) { return 0.0; });
}

VelocityModel VelocityModel::quadratic(double free_speed) {
    return from_callables(
        "quadratic", [free_speed](double rho) { return free_speed * (1.0 - rho * rho); },
        [free_speed](double rho) { return -2.0 * free_speed * rho; },
        [free_speed](double) { return -2.0 * free_speed; });
}

std::vector<std::string> velocity_violations(const VelocityModel& v) {
    std::vector<std::string> out;
    if (!v.evaluate || !v.derivative || !v.second_derivative) {
        out.push_back("velocity: missing callable");
        return out;
    }
    if (std::fabs(v.evaluate(0.0) - v.v_max) > 1e-12) {
        out.push_back("velocity: v(0) != v_max");
    }
    if (v.v_max <= 0.0) {
        out.push_back("velocity: v_max must be positive");
    }
    if (std::fabs(v.evaluate(1.0)) > 1e-12) {
        out.push_back("velocity: v(1) != 0");
    }
    double prev = v.evaluate(0.0);
    for (int i = 1; i <= kSamplePoints; ++i) {
        const double x = static_cast<double>(i) / kSamplePoints;
        const double y = v.evaluate(x);
        if (!(y < prev)) {
            out.push_back("velocity: not strictly decreasing near rho=" + std::to_string(x));
            break;
        }
        prev = y;
    }
    return out;
}

double velocity_inverse(const VelocityModel& v, double speed) {
    return invert_monotone(v.evaluate, v.derivative, 0.0, 1.0, speed);
}

}  // namespace ntf
