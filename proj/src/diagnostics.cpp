#include "ntf/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace ntf {

namespace {

double eta_integrand(double r, const ModelParams& p) {
    return r * (1.0 + p.gamma * p.velocity.evaluate(r));
}

double psi_integrand(double r, const ModelParams& p) {
    return eta_integrand(r, p) * p.velocity.flux_derivative(r);
}

void check_range(double rho) {
    if (rho < -1e-12 || rho > 1.0 + 1e-12) {
        throw std::invalid_argument("entropy: density outside [0,1]");
    }
}

}  // namespace

double EntropyPair::eta(double rho) const {
    check_range(rho);
    const ModelParams* p = &params;
    return adaptive_simpson([p](double r) { return eta_integrand(r, *p); }, 0.0,
                            std::clamp(rho, 0.0, 1.0), 1e-12);
}

double EntropyPair::psi(double rho) const {
    check_range(rho);
    const ModelParams* p = &params;
    return adaptive_simpson([p](double r) { return psi_integrand(r, *p); }, 0.0,
                            std::clamp(rho, 0.0, 1.0), 1e-12);
}

EntropyTable::EntropyTable(const ModelParams& params, int n_intervals)
    : n_(n_intervals), h_(1.0 / n_intervals) {
    eta_cum_.resize(n_ + 1);
    psi_cum_.resize(n_ + 1);
    eta_deriv_.resize(n_ + 1);
    psi_deriv_.resize(n_ + 1);
    eta_cum_[0] = psi_cum_[0] = 0.0;
    eta_deriv_[0] = eta_integrand(0.0, params);
    psi_deriv_[0] = psi_integrand(0.0, params);
    for (int k = 1; k <= n_; ++k) {
        const double a = (k - 1) * h_;
        const double b = k * h_;
        const double m = 0.5 * (a + b);
        eta_cum_[k] = eta_cum_[k - 1] + h_ / 6.0 *
                                            (eta_integrand(a, params) +
                                             4.0 * eta_integrand(m, params) +
                                             eta_integrand(b, params));
        psi_cum_[k] = psi_cum_[k - 1] + h_ / 6.0 *
                                            (psi_integrand(a, params) +
                                             4.0 * psi_integrand(m, params) +
                                             psi_integrand(b, params));
        eta_deriv_[k] = eta_integrand(b, params);
        psi_deriv_[k] = psi_integrand(b, params);
    }
}

double EntropyTable::interp(const std::vector<double>& cum, const std::vector<double>& deriv,
                            double rho) const {
    const double x = std::clamp(rho, 0.0, 1.0) / h_;
    int k = std::min(static_cast<int>(x), n_ - 1);
    const double s = x - k;  // in [0,1]
    // Cubic Hermite with exact endpoint derivatives of the cumulative integral.
    const double y0 = cum[k];
    const double y1 = cum[k + 1];
    const double d0 = deriv[k] * h_;
    const double d1 = deriv[k + 1] * h_;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * d0 +
           (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * d1;
}

double EntropyTable::eta(double rho) const { return interp(eta_cum_, eta_deriv_, rho); }
double EntropyTable::psi(double rho) const { return interp(psi_cum_, psi_deriv_, rho); }

double BumpTestFunction::value(double t, double x) const {
    const double rt = (t - t_center) / t_scale;
    const double rx = (x - x_center) / x_scale;
    if (std::fabs(rt) >= 1.0 || std::fabs(rx) >= 1.0) return 0.0;
    const double bt = 1.0 - rt * rt;
    const double bx = 1.0 - rx * rx;
    return bt * bt * bt * bx * bx * bx;
}

std::vector<BumpTestFunction> make_test_bank(double T, const Grid1D& grid) {
    std::vector<BumpTestFunction> bank;
    const double x_mid = 0.5 * (grid.x_left + grid.x_right());
    const double half = 0.5 * grid.length();
    const struct {
        double tc, xc;
    } centers[5] = {{0.5, 0.0}, {0.35, -0.25}, {0.35, 0.25}, {0.65, -0.25}, {0.65, 0.25}};
    const double scales[4] = {0.9, 0.6, 0.4, 0.25};
    for (const auto& c : centers) {
        for (double s : scales) {
            BumpTestFunction f;
            f.t_center = c.tc * T;
            f.x_center = x_mid + c.xc * 2.0 * half * 0.5;
            f.t_scale = s * 0.95 * std::min(f.t_center, T - f.t_center);
            const double room = std::min(f.x_center - grid.x_left, grid.x_right() - f.x_center);
            f.x_scale = s * 0.9 * room;
            bank.push_back(f);
        }
    }
    return bank;
}

double entropy_residual(const SpaceTimeSolution& solution, const ModelParams& params,
                        const std::vector<BumpTestFunction>& bank) {
    const SpaceTimeField& rho = solution.rho;
    const Grid1D& grid = rho.grid();
    const double dt = rho.dt();
    const double dx = grid.dx;
    const int levels = rho.levels();
    const int n = grid.n_cells;
    const double T = rho.latest_time();

    for (const BumpTestFunction& f : bank) {
        if (f.t_center - f.t_scale <= 0.0 || f.t_center + f.t_scale >= T ||
            f.x_center - f.x_scale <= grid.x_left + dx ||
            f.x_center + f.x_scale >= grid.x_right() - dx) {
            throw NumericalError("entropy_residual: test function support touches the boundary");
        }
    }

    const EntropyTable table(params);
    std::vector<double> eta_vals(static_cast<std::size_t>(levels) * n);
    std::vector<double> psi_vals(static_cast<std::size_t>(levels) * n);
    for (int l = 0; l < levels; ++l) {
        const std::vector<double>& row = rho.level_values(l);
        for (int i = 0; i < n; ++i) {
            eta_vals[static_cast<std::size_t>(l) * n + i] = table.eta(row[i]);
            psi_vals[static_cast<std::size_t>(l) * n + i] = table.psi(row[i]);
        }
    }

    double minimum = 0.0;
    bool first = true;
    for (const BumpTestFunction& f : bank) {
        // Index box covering the support, padded by one for the differences.
        int l_lo = std::max(0, static_cast<int>((f.t_center - f.t_scale) / dt) - 1);
        int l_hi = std::min(levels - 1, static_cast<int>((f.t_center + f.t_scale) / dt) + 2);
        int i_lo = std::max(
            0, static_cast<int>((f.x_center - f.x_scale - grid.x_left) / dx - 0.5) - 1);
        int i_hi = std::min(
            n - 1, static_cast<int>((f.x_center + f.x_scale - grid.x_left) / dx - 0.5) + 2);
        auto phi = [&](int l, int i) -> double {
            if (l < 0 || l >= levels) return 0.0;
            if (i < 0 || i >= n) return 0.0;
            return f.value(l * dt, grid.center(i));
        };
        double total = 0.0;
        for (int l = l_lo; l <= l_hi; ++l) {
            for (int i = i_lo; i <= i_hi; ++i) {
                const double dphi_dt = (phi(l + 1, i) - phi(l - 1, i)) / (2.0 * dt);
                const double dphi_dx = (phi(l, i + 1) - phi(l, i - 1)) / (2.0 * dx);
                const std::size_t idx = static_cast<std::size_t>(l) * n + i;
                total += (eta_vals[idx] * dphi_dt + psi_vals[idx] * dphi_dx);
            }
        }
        total *= dx * dt;
        if (first || total < minimum) {
            minimum = total;
            first = false;
        }
    }
    return minimum;
}

namespace {

double l1_row_distance(const SpaceTimeField& a, const SpaceTimeField& b, double t) {
    // Integrate on a's cells; b is interpolated (exact when grids coincide).
    const Grid1D& grid = a.grid();
    double sum = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) {
        const double x = grid.center(i);
        sum += std::fabs(a.sample({t, x}) - b.sample({t, x}));
    }
    return sum * grid.dx;
}

}  // namespace

double l1_spacetime_distance(const SpaceTimeField& a, const SpaceTimeField& b, double T,
                             int probes) {
    probes = std::max(2, probes);
    const double dt = T / (probes - 1);
    double total = 0.0;
    for (int k = 0; k < probes; ++k) {
        const double t = std::min(k * dt, T);
        const double weight = (k == 0 || k == probes - 1) ? 0.5 : 1.0;
        total += weight * l1_row_distance(a, b, t);
    }
    return total * dt;
}

QRhoL1 q_rho_l1(const SpaceTimeSolution& solution, const ModelParams& params, double T) {
    const SpaceTimeField& rho = solution.rho;
    const SpaceTimeField& q = solution.q;
    const Grid1D& grid = rho.grid();
    const double dt = rho.dt();
    int count = 0;
    while (count < rho.levels() && rho.time_at(count) <= T + 1e-12 * std::max(1.0, T)) ++count;
    double total = 0.0;
    for (int l = 0; l < count; ++l) {
        const std::vector<double>& r = rho.level_values(l);
        const std::vector<double>& s = q.level_values(l);
        double row = 0.0;
        for (int i = 0; i < grid.n_cells; ++i) row += std::fabs(s[i] - r[i]);
        const double weight = (l == 0 || l == count - 1) ? 0.5 : 1.0;
        total += weight * row * grid.dx * dt;
    }
    QRhoL1 result;
    result.value = total;
    const double eps = params.kernel.epsilon;
    result.ratio = (T > 0.0 && eps > 0.0) ? total / (T * eps) : 0.0;
    return result;
}

StabilityResult stability_ratio(const SpaceTimeSolution& a, const SpaceTimeSolution& b,
                                const std::vector<double>& rho0_a,
                                const std::vector<double>& rho0_b, double T) {
    const double dx = a.rho.grid().dx;
    double initial = 0.0;
    for (std::size_t i = 0; i < rho0_a.size(); ++i) initial += std::fabs(rho0_a[i] - rho0_b[i]);
    initial *= dx;
    if (initial < 1e-14) {
        throw NumericalError("stability_ratio: identical initial data (zero distance)");
    }
    StabilityResult result;
    result.initial_l1 = initial;
    result.ratio = l1_spacetime_distance(a.rho, b.rho, T) / initial;
    result.theorem_shape = 1.0 + tv_grid(rho0_a) + tv_grid(rho0_b);
    return result;
}

double bounds_violation(const SpaceTimeSolution& solution, double rho_min, double rho_max) {
    double worst = 0.0;
    const SpaceTimeField& rho = solution.rho;
    for (int l = rho.first_retained(); l < rho.levels(); ++l) {
        for (double v : rho.level_values(l)) {
            worst = std::max(worst, std::max(v - rho_max, rho_min - v));
        }
    }
    return std::max(0.0, worst);
}

DiagnosticsReport diagnose(const SpaceTimeSolution& solution, const ModelParams& params,
                           const std::vector<double>& rho0, double T) {
    DiagnosticsReport report;
    const Grid1D& grid = solution.rho.grid();
    const auto [lo, hi] = rho_bounds(rho0, grid, params);
    report.rho_min = lo;
    report.rho_max = hi;
    report.bounds_violation = bounds_violation(solution, lo, hi);
    report.tv0 = tv_grid(rho0);
    report.tv_spacetime = tv_spacetime(solution.rho, T);
    const double denom = (lo > 0.0) ? T * (1.0 + 1.0 / lo) * report.tv0 : 0.0;
    report.tv_ratio = (denom > 0.0) ? report.tv_spacetime / denom : 0.0;
    const QRhoL1 qr = q_rho_l1(solution, params, T);
    report.q_rho_value = qr.value;
    report.q_rho_ratio = qr.ratio;
    report.entropy_min = entropy_residual(solution, params, make_test_bank(T, grid));
    return report;
}

}  // namespace ntf
