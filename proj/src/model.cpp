#include "ntf/model.hpp"

#include <algorithm>
#include <cmath>

#include "ntf/quadrature.hpp"

namespace ntf {

double gamma_max(const VelocityModel& velocity, const KernelSpec& kernel) {
    if (kernel.beta <= 0.0) throw AdmissibilityError("gamma_max: kernel beta <= 0");
    if (kernel.w0 <= 0.0) throw AdmissibilityError("gamma_max: kernel w(0) <= 0");
    if (velocity.sup_dv <= 0.0) {
        throw AdmissibilityError("gamma_max: velocity is not strictly decreasing (sup|v'| = 0)");
    }
    const double from_speed = 1.0 / (3.0 * (velocity.v_max + velocity.sup_dv));
    const double from_kernel = kernel.beta / (kernel.w0 * velocity.sup_dv);
    return std::min(from_speed, from_kernel);
}

bool check_bv_condition(const ModelParams& params) {
    const VelocityModel& v = params.velocity;
    const double lhs = (1.0 - 2.0 * params.gamma * v.sup_dv) * v.min_abs_dv;
    const double rhs = (1.0 + params.gamma * v.v_max) * v.sup_ddv;
    return lhs >= rhs;
}

double g_map(double rho, const ModelParams& params) {
    if (rho < -1e-12 || rho > 1.0 + 1e-12) {
        throw std::invalid_argument("g_map: density outside [0,1]");
    }
    rho = std::clamp(rho, 0.0, 1.0);
    return rho * (1.0 + params.gamma * params.velocity.evaluate(rho));
}

double g_inverse(double z, const ModelParams& params) {
    if (params.gamma * params.velocity.sup_dv >= 1.0) {
        throw AdmissibilityError("g_inverse: gamma sup|v'| >= 1, the rescaling is not monotone");
    }
    if (z < -1e-12 || z > 1.0 + 1e-12) {
        throw std::invalid_argument("g_inverse: value outside [0,1]");
    }
    z = std::clamp(z, 0.0, 1.0);
    const ModelParams* p = &params;
    auto f = [p](double rho) { return g_map(rho, *p); };
    auto df = [p](double rho) {
        return 1.0 + p->gamma * (p->velocity.evaluate(rho) + rho * p->velocity.derivative(rho));
    };
    return invert_monotone(f, df, 0.0, 1.0, z, 1e-13);
}

namespace {

SpaceTimeField initial_field(const std::vector<double>& rho0, const Grid1D& grid) {
    SpaceTimeField field(grid, 1.0, 0);
    field.append_level(rho0);
    return field;
}

}  // namespace

std::pair<double, double> rho_bounds(const std::vector<double>& rho0, const Grid1D& grid,
                                     const ModelParams& params) {
    const SpaceTimeField field = initial_field(rho0, grid);
    const std::vector<double> q0 = compute_q(field, 0.0, params);

    double inf_rho = std::min(grid.ext_left, grid.ext_right);
    double sup_rho = std::max(grid.ext_left, grid.ext_right);
    // Far-field plateaus have q0 equal to the plateau itself.
    double inf_z = std::min(g_map(grid.ext_left, params), g_map(grid.ext_right, params));
    double sup_z = std::max(g_map(grid.ext_left, params), g_map(grid.ext_right, params));
    for (int i = 0; i < grid.n_cells; ++i) {
        inf_rho = std::min(inf_rho, rho0[i]);
        sup_rho = std::max(sup_rho, rho0[i]);
        const double z = rho0[i] * (1.0 + params.gamma * params.velocity.evaluate(q0[i]));
        inf_z = std::min(inf_z, z);
        sup_z = std::max(sup_z, z);
    }
    const double lo = std::min(inf_rho, g_inverse(std::clamp(inf_z, 0.0, 1.0), params));
    const double hi = std::max(sup_rho, g_inverse(std::clamp(sup_z, 0.0, 1.0), params));
    return {lo, hi};
}

InitialDataReport validate_initial_data(const std::vector<double>& rho0, const Grid1D& grid,
                                        const ModelParams& params) {
    InitialDataReport report;
    report.tv = tv_grid(rho0);
    const double tol = 1e-10;
    for (int i = 0; i < grid.n_cells; ++i) {
        if (rho0[i] < -tol || rho0[i] > 1.0 + tol) {
            report.first_violation = i;
            report.reason = "density outside [0,1] at cell " + std::to_string(i);
            return report;
        }
    }
    const SpaceTimeField field = initial_field(rho0, grid);
    const std::vector<double> q0 = compute_q(field, 0.0, params);
    for (int i = 0; i < grid.n_cells; ++i) {
        const double z = rho0[i] * (1.0 + params.gamma * params.velocity.evaluate(q0[i]));
        if (z < -tol || z > 1.0 + tol) {
            report.first_violation = i;
            report.reason = "rho0 (1 + gamma v(q0)) = " + std::to_string(z) +
                            " outside [0,1] at cell " + std::to_string(i);
            return report;
        }
    }
    report.ok = true;
    return report;
}

AdmissibilityReport check_admissibility(const ModelParams& params,
                                        const std::vector<double>& rho0, const Grid1D& grid) {
    AdmissibilityReport report;
    const std::vector<std::string> v_bad = velocity_violations(params.velocity);
    const std::vector<std::string> k_bad = kernel_violations(params.kernel);
    report.assumption1_ok = v_bad.empty();
    report.assumption2_ok = k_bad.empty();
    report.violations.insert(report.violations.end(), v_bad.begin(), v_bad.end());
    report.violations.insert(report.violations.end(), k_bad.begin(), k_bad.end());

    if (report.assumption1_ok && report.assumption2_ok) {
        report.gamma_max = gamma_max(params.velocity, params.kernel);
        report.gamma_ok = params.gamma >= 0.0 && params.gamma <= report.gamma_max + 1e-15;
        if (!report.gamma_ok) {
            report.violations.push_back("gamma = " + std::to_string(params.gamma) +
                                        " exceeds the admissible threshold " +
                                        std::to_string(report.gamma_max));
        }
    }
    report.bv_condition_ok = check_bv_condition(params);

    const InitialDataReport data = validate_initial_data(rho0, grid, params);
    report.initial_data_ok = data.ok;
    if (!data.ok) report.violations.push_back("initial data: " + data.reason);

    if (report.gamma_ok && params.gamma * params.velocity.sup_dv < 1.0 && data.ok) {
        const auto [lo, hi] = rho_bounds(rho0, grid, params);
        report.rho_min = lo;
        report.rho_max = hi;
    }
    return report;
}

void require_admissible(const ModelParams& params, const std::vector<double>& rho0,
                        const Grid1D& grid) {
    const AdmissibilityReport report = check_admissibility(params, rho0, grid);
    if (!report.solver_ready()) {
        std::string message = "inadmissible configuration:";
        for (const std::string& v : report.violations) message += "\n  - " + v;
        throw AdmissibilityError(message);
    }
}

}  // namespace ntf
