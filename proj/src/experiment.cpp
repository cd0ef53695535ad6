#include "ntf/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ntf/characteristics.hpp"
#include "ntf/io.hpp"
#include "ntf/lwr.hpp"
#include "ntf/relaxation.hpp"
#include "ntf/scenario.hpp"

namespace ntf {

ModelParams build_params(const RunConfig& config) {
    const std::vector<std::string> issues = validate_run_config(config);
    if (!issues.empty()) {
        std::string message = "invalid configuration:";
        for (const std::string& s : issues) message += "\n  - " + s;
        throw AdmissibilityError(message);
    }
    ModelParams params;
    params.gamma = config.gamma;
    params.kernel = KernelSpec::exponential(config.epsilon, config.truncation_tol);
    params.velocity = (config.velocity == "greenshields")
                          ? VelocityModel::greenshields(config.free_speed)
                          : VelocityModel::quadratic(config.free_speed);
    return params;
}

Grid1D build_grid(const RunConfig& config) {
    const Scenario scenario = make_scenario(config.scenario, config.scenario_knobs);
    return make_grid(config.x_left, config.x_right, config.n_cells, scenario);
}

std::vector<double> build_rho0(const RunConfig& config, const Grid1D& grid) {
    const Scenario scenario = make_scenario(config.scenario, config.scenario_knobs);
    return discretize(scenario, grid);
}

namespace {

double characteristics_dt(const RunConfig& config, const Grid1D& grid, const ModelParams& params) {
    const double dt0 = config.dt_factor * grid.dx / params.velocity.v_max;
    const int levels = std::max(1, static_cast<int>(std::ceil(config.T / dt0 - 1e-12)));
    return config.T / levels;
}

SpaceTimeSolution dispatch_solver(const RunConfig& config, const Grid1D& grid,
                                  const std::vector<double>& rho0, const ModelParams& params) {
    if (config.solver == "relaxation") {
        return solve_relaxation(grid, rho0, params, config.T, config.cfl, config.collect_tvd);
    }
    if (config.solver == "lwr") {
        return solve_lwr(grid, rho0, params.velocity, config.T, config.cfl);
    }
    PicardConfig picard;
    picard.window = config.picard_window;
    picard.tol = config.picard_tol;
    picard.max_iters = config.picard_max_iters;
    picard.ode_steps = config.ode_steps;
    return solve_characteristics(grid, rho0, params, config.T,
                                 characteristics_dt(config, grid, params), picard);
}

}  // namespace

RunResult execute_run(const RunConfig& config) {
    RunResult result;
    result.config = config;
    result.params = build_params(config);
    result.grid = build_grid(config);
    result.rho0 = build_rho0(config, result.grid);
    result.run_id = config_hash(config);
    result.solution = dispatch_solver(config, result.grid, result.rho0, result.params);
    result.diagnostics = diagnose(result.solution, result.params, result.rho0, config.T);
    return result;
}

void write_run_artifacts(const RunResult& result, const std::string& out_dir) {
    ensure_directory(out_dir);
    const AdmissibilityReport admissibility =
        check_admissibility(result.params, result.rho0, result.grid);
    write_params_json(out_dir + "/params.json", result.config, admissibility, result.run_id);
    write_snapshots_csv(out_dir + "/snapshots.csv", result.solution, result.config.output_times);
    write_diagnostics_csv(out_dir + "/diagnostics.csv", result.config, result.diagnostics,
                          result.run_id);
    write_passfail_json(out_dir + "/passfail.json", result.config, result.diagnostics,
                        result.run_id);
    write_telemetry_json(out_dir + "/telemetry.json", result.solution.telemetry, result.run_id);
    if (!result.solution.telemetry.tvd.empty()) {
        write_tvd_csv(out_dir + "/tvd.csv", result.solution.telemetry.tvd);
    }
    write_plot_files(out_dir, result.solution);
}

void parallel_for_ordered(int n, int workers, const std::function<void(int)>& f) {
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min(workers, n);
    pool.reserve(count);
    for (int k = 0; k < count; ++k) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<SweepRow> sweep_epsilon(const SweepConfig& sweep, int workers) {
    if (sweep.axis != "epsilon") throw AdmissibilityError("sweep_epsilon: axis must be epsilon");
    // Shared local-model reference on a 4x refined grid.
    RunConfig ref_config = sweep.base;
    ref_config.n_cells *= 4;
    const Grid1D ref_grid = build_grid(ref_config);
    const std::vector<double> ref_rho0 = build_rho0(ref_config, ref_grid);
    const ModelParams ref_params = build_params(ref_config);
    const SpaceTimeSolution reference =
        solve_lwr(ref_grid, ref_rho0, ref_params.velocity, ref_config.T, ref_config.cfl);

    std::vector<SweepRow> rows(sweep.values.size());
    parallel_for_ordered(static_cast<int>(sweep.values.size()), workers, [&](int i) {
        RunConfig member = sweep.base;
        member.epsilon = sweep.values[i];
        const RunResult result = execute_run(member);
        SweepRow row;
        row.value = member.epsilon;
        row.l1_error = l1_spacetime_distance(result.solution.rho, reference.rho, member.T);
        row.tv_ratio = result.diagnostics.tv_ratio;
        row.q_rho_ratio = result.diagnostics.q_rho_ratio;
        row.entropy_min = result.diagnostics.entropy_min;
        row.run_id = result.run_id;
        rows[i] = row;
    });
    return rows;
}

std::vector<SweepRow> sweep_gamma(const SweepConfig& sweep, int workers) {
    if (sweep.axis != "gamma") throw AdmissibilityError("sweep_gamma: axis must be gamma");
    RunConfig zero_config = sweep.base;
    zero_config.gamma = 0.0;
    zero_config.solver = "characteristics";
    const RunResult zero = execute_run(zero_config);

    std::vector<SweepRow> rows(sweep.values.size());
    parallel_for_ordered(static_cast<int>(sweep.values.size()), workers, [&](int i) {
        RunConfig member = sweep.base;
        member.gamma = sweep.values[i];
        member.solver = "characteristics";
        const RunResult result = execute_run(member);
        SweepRow row;
        row.value = member.gamma;
        row.l1_error = l1_spacetime_distance(result.solution.rho, zero.solution.rho, member.T);
        row.tv_ratio = result.diagnostics.tv_ratio;
        row.q_rho_ratio = result.diagnostics.q_rho_ratio;
        row.entropy_min = result.diagnostics.entropy_min;
        row.run_id = result.run_id;
        rows[i] = row;
    });
    return rows;
}

std::string sweep_table_csv(const std::string& axis, const std::vector<SweepRow>& rows) {
    std::string out = axis + ",l1_error,tv_ratio,q_rho_ratio,entropy_min,config_hash\n";
    for (const SweepRow& r : rows) {
        out += format_double(r.value) + "," + format_double(r.l1_error) + "," +
               format_double(r.tv_ratio) + "," + format_double(r.q_rho_ratio) + "," +
               format_double(r.entropy_min) + "," + r.run_id + "\n";
    }
    return out;
}

std::vector<StabilityRow> stability_study(const RunConfig& config, int workers) {
    const RunResult base = execute_run(config);
    const Grid1D& grid = base.grid;

    struct Perturbation {
        std::string family;
        std::vector<double> rho0;
    };
    std::vector<Perturbation> perturbations;
    {
        // Shift by one and two cells (plateau enters on the upwind side).
        for (int cells : {1, 2}) {
            Perturbation p;
            p.family = "shift";
            p.rho0.resize(grid.n_cells);
            for (int i = 0; i < grid.n_cells; ++i) {
                const int j = i - cells;
                p.rho0[i] = (j >= 0) ? base.rho0[j] : grid.ext_left;
            }
            perturbations.push_back(std::move(p));
        }
        for (double delta : {1e-2, 1e-3}) {
            Perturbation p;
            p.family = "amplitude";
            p.rho0.resize(grid.n_cells);
            const double background = grid.ext_left;
            for (int i = 0; i < grid.n_cells; ++i) {
                p.rho0[i] = background + (base.rho0[i] - background) * (1.0 + delta);
            }
            perturbations.push_back(std::move(p));
        }
    }

    std::vector<StabilityRow> rows(perturbations.size());
    parallel_for_ordered(static_cast<int>(perturbations.size()), workers, [&](int i) {
        const Perturbation& p = perturbations[i];
        SpaceTimeSolution solution = dispatch_solver(config, grid, p.rho0, base.params);
        const StabilityResult s =
            stability_ratio(base.solution, solution, base.rho0, p.rho0, config.T);
        rows[i] = {p.family, s.initial_l1, s.ratio, s.theorem_shape};
    });
    return rows;
}

std::string stability_table_csv(const std::vector<StabilityRow>& rows) {
    std::string out = "family,perturbation_l1,ratio,theorem_shape\n";
    for (const StabilityRow& r : rows) {
        out += r.family + "," + format_double(r.size) + "," + format_double(r.ratio) + "," +
               format_double(r.theorem_shape) + "\n";
    }
    return out;
}

CompareResult compare_solvers(const RunConfig& config) {
    RunConfig a = config;
    a.solver = "characteristics";
    RunConfig b = config;
    b.solver = "relaxation";
    const RunResult ra = execute_run(a);
    const RunResult rb = execute_run(b);
    CompareResult result;
    result.l1_distance = l1_spacetime_distance(ra.solution.rho, rb.solution.rho, config.T);
    result.run_id_characteristics = ra.run_id;
    result.run_id_relaxation = rb.run_id;
    return result;
}

}  // namespace ntf
