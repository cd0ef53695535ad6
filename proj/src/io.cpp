#include "ntf/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ntf {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw IoError("cannot create directory " + path + ": " + ec.message());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

namespace {

std::vector<int> snapshot_levels(const SpaceTimeSolution& solution,
                                 const std::vector<double>& output_times) {
    std::vector<int> levels;
    const SpaceTimeField& rho = solution.rho;
    if (output_times.empty()) {
        for (int l = rho.first_retained(); l < rho.levels(); ++l) levels.push_back(l);
        return levels;
    }
    for (double t : output_times) {
        int nearest = rho.first_retained();
        double best = std::fabs(rho.time_at(nearest) - t);
        for (int l = rho.first_retained(); l < rho.levels(); ++l) {
            const double d = std::fabs(rho.time_at(l) - t);
            if (d < best) {
                best = d;
                nearest = l;
            }
        }
        if (levels.empty() || levels.back() != nearest) levels.push_back(nearest);
    }
    return levels;
}

}  // namespace

void write_snapshots_csv(const std::string& path, const SpaceTimeSolution& solution,
                         const std::vector<double>& output_times) {
    std::string out = "t,x,rho,q\n";
    const Grid1D& grid = solution.rho.grid();
    for (int l : snapshot_levels(solution, output_times)) {
        const std::vector<double>& r = solution.rho.level_values(l);
        const std::vector<double>& q = solution.q.level_values(l);
        const std::string t = format_double(solution.rho.time_at(l));
        for (int i = 0; i < grid.n_cells; ++i) {
            out += t;
            out += ',';
            out += format_double(grid.center(i));
            out += ',';
            out += format_double(r[i]);
            out += ',';
            out += format_double(q[i]);
            out += '\n';
        }
    }
    write_text_file(path, out);
}

namespace {

json config_to_json(const RunConfig& c) {
    json j;
    j["scenario"] = c.scenario;
    j["scenario_knobs"] = c.scenario_knobs;
    j["velocity"] = c.velocity;
    j["free_speed"] = c.free_speed;
    j["kernel"] = c.kernel;
    j["epsilon"] = c.epsilon;
    j["truncation_tol"] = c.truncation_tol;
    j["gamma"] = c.gamma;
    j["grid"] = {{"x_left", c.x_left}, {"x_right", c.x_right}, {"n_cells", c.n_cells}};
    j["T"] = c.T;
    j["solver"] = c.solver;
    j["output_times"] = c.output_times;
    j["cfl"] = c.cfl;
    j["dt_factor"] = c.dt_factor;
    j["picard"] = {{"window", c.picard_window},
                   {"tol", c.picard_tol},
                   {"max_iters", c.picard_max_iters},
                   {"ode_steps", c.ode_steps}};
    return j;
}

}  // namespace

void write_params_json(const std::string& path, const RunConfig& config,
                       const AdmissibilityReport& admissibility, const std::string& run_id) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["run_id"] = run_id;
    j["config"] = config_to_json(config);
    j["admissibility"] = {{"gamma_max", admissibility.gamma_max},
                          {"assumption1_ok", admissibility.assumption1_ok},
                          {"assumption2_ok", admissibility.assumption2_ok},
                          {"gamma_ok", admissibility.gamma_ok},
                          {"bv_condition_ok", admissibility.bv_condition_ok},
                          {"initial_data_ok", admissibility.initial_data_ok},
                          {"rho_min", admissibility.rho_min},
                          {"rho_max", admissibility.rho_max},
                          {"violations", admissibility.violations}};
    write_text_file(path, j.dump(2) + "\n");
}

namespace {

const char* kDiagnosticsHeader =
    "scenario,solver,epsilon,gamma,n_cells,rho_min,rho_max,bounds_violation,tv0,tv_spacetime,"
    "tv_ratio,q_rho_l1,q_rho_ratio,entropy_min,config_hash\n";

}  // namespace

void write_diagnostics_csv(const std::string& path, const RunConfig& config,
                           const DiagnosticsReport& report, const std::string& run_id) {
    std::string out = kDiagnosticsHeader;
    out += config.scenario + "," + config.solver + "," + format_double(config.epsilon) + "," +
           format_double(config.gamma) + "," + std::to_string(config.n_cells) + "," +
           format_double(report.rho_min) + "," + format_double(report.rho_max) + "," +
           format_double(report.bounds_violation) + "," + format_double(report.tv0) + "," +
           format_double(report.tv_spacetime) + "," + format_double(report.tv_ratio) + "," +
           format_double(report.q_rho_value) + "," + format_double(report.q_rho_ratio) + "," +
           format_double(report.entropy_min) + "," + run_id + "\n";
    write_text_file(path, out);
}

void write_passfail_json(const std::string& path, const RunConfig& config,
                         const DiagnosticsReport& report, const std::string& run_id) {
    const double dx = (config.x_right - config.x_left) / config.n_cells;
    const double bounds_threshold = 1e-3 + 2.0 * dx;
    json j;
    j["schema_version"] = kSchemaVersion;
    j["run_id"] = run_id;
    j["thm1.1"] = {{"pass", report.bounds_violation <= bounds_threshold},
                   {"bounds_violation", report.bounds_violation},
                   {"threshold", bounds_threshold}};
    j["thm1.2"] = {{"note", "judged by the stability command across perturbation sizes"}};
    j["thm1.3"] = {{"tv_spacetime", report.tv_spacetime},
                   {"ratio", report.tv_ratio},
                   {"note", "band checked across the epsilon sweep"}};
    j["thm4.1-eq4.6"] = {{"value", report.q_rho_value},
                         {"ratio", report.q_rho_ratio},
                         {"note", "band checked across the epsilon sweep"}};
    j["thm1.4"] = {{"entropy_min", report.entropy_min},
                   {"note", "decay toward 0 checked across the epsilon sweep"}};
    write_text_file(path, j.dump(2) + "\n");
}

void write_telemetry_json(const std::string& path, const SolveTelemetry& telemetry,
                          const std::string& run_id) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["run_id"] = run_id;
    j["solver"] = telemetry.solver;
    j["dt"] = telemetry.dt;
    j["n_levels"] = telemetry.n_levels;
    json windows = json::array();
    for (const WindowTelemetry& w : telemetry.windows) {
        windows.push_back({{"t_begin", w.t_begin},
                           {"t_end", w.t_end},
                           {"iterations", w.iterations},
                           {"residuals", w.residuals}});
    }
    j["windows"] = windows;
    j["tvd_rows"] = telemetry.tvd.size();
    write_text_file(path, j.dump(2) + "\n");
}

void write_tvd_csv(const std::string& path, const std::vector<TvdRow>& rows) {
    std::string out = "t,tv_u,tv_h,violation\n";
    for (const TvdRow& r : rows) {
        out += format_double(r.t) + "," + format_double(r.tv_u) + "," + format_double(r.tv_h) +
               "," + format_double(r.violation) + "\n";
    }
    write_text_file(path, out);
}

void write_plot_files(const std::string& out_dir, const SpaceTimeSolution& solution) {
    const Grid1D& grid = solution.rho.grid();
    const int last = solution.rho.levels() - 1;
    std::string dat = "# x rho q\n";
    const std::vector<double>& r = solution.rho.level_values(last);
    const std::vector<double>& q = solution.q.level_values(last);
    for (int i = 0; i < grid.n_cells; ++i) {
        dat += format_double(grid.center(i)) + " " + format_double(r[i]) + " " +
               format_double(q[i]) + "\n";
    }
    write_text_file(out_dir + "/profile.dat", dat);
    write_text_file(out_dir + "/plot.gp",
                    "set xlabel 'x'\n"
                    "set ylabel 'density'\n"
                    "plot 'profile.dat' using 1:2 with lines title 'rho', \\\n"
                    "     'profile.dat' using 1:3 with lines title 'q'\n");
}

}  // namespace ntf
