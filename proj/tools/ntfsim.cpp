// Command-line front end: validate configurations, run single simulations,
// and orchestrate parameter sweeps / stability studies. Exit codes: 0 ok,
// 2 admissibility or configuration rejection, 3 numerical failure, 4 I/O.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ntf/characteristics.hpp"
#include "ntf/experiment.hpp"
#include "ntf/io.hpp"
#include "ntf/scenario.hpp"

using nlohmann::json;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    int workers = 1;
    std::vector<std::string> overrides;
};

ntf::ConfigText load_with_overrides(const CommonArgs& args) {
    ntf::ConfigText text =
        args.config_path.empty() ? ntf::ConfigText{} : ntf::load_config(args.config_path);
    for (const std::string& o : args.overrides) ntf::apply_override(text, o);
    return text;
}

ntf::RunConfig resolve_run_config(const CommonArgs& args) {
    ntf::RunConfig config = ntf::run_config_from(load_with_overrides(args));
    if (!args.out_dir.empty()) config.out_dir = args.out_dir;
    return config;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "configuration file (INI-style)");
    cmd->add_option("--out", args.out_dir, "output directory (overrides run.out_dir)");
    cmd->add_option("--workers", args.workers, "worker pool size for sweep members")
        ->default_val(1);
    cmd->add_option("--override", args.overrides, "section.key=value (repeatable)")
        ->take_all();
}

int do_validate(const CommonArgs& args) {
    const ntf::RunConfig config = resolve_run_config(args);
    json report;
    const std::vector<std::string> issues = ntf::validate_run_config(config);
    report["config_issues"] = issues;
    if (issues.empty()) {
        const ntf::ModelParams params = ntf::build_params(config);
        const ntf::Grid1D grid = ntf::build_grid(config);
        const std::vector<double> rho0 = ntf::build_rho0(config, grid);
        const ntf::AdmissibilityReport adm = ntf::check_admissibility(params, rho0, grid);
        report["gamma_max"] = adm.gamma_max;
        report["assumption1_ok"] = adm.assumption1_ok;
        report["assumption2_ok"] = adm.assumption2_ok;
        report["gamma_ok"] = adm.gamma_ok;
        report["bv_condition_ok"] = adm.bv_condition_ok;
        report["initial_data_ok"] = adm.initial_data_ok;
        report["rho_min"] = adm.rho_min;
        report["rho_max"] = adm.rho_max;
        report["violations"] = adm.violations;
        report["run_id"] = ntf::config_hash(config);
        std::cout << report.dump(2) << "\n";
        return adm.solver_ready() ? 0 : 2;
    }
    std::cout << report.dump(2) << "\n";
    return 2;
}

int do_run(const CommonArgs& args) {
    const ntf::RunConfig config = resolve_run_config(args);
    const ntf::RunResult result = ntf::execute_run(config);
    ntf::write_run_artifacts(result, config.out_dir);
    std::cout << "run " << result.run_id << " -> " << config.out_dir << "\n";
    return 0;
}

int do_sweep(const CommonArgs& args, const std::string& axis) {
    ntf::ConfigText text = load_with_overrides(args);
    text.entries["sweep.axis"] = axis;
    ntf::SweepConfig sweep = ntf::sweep_config_from(text);
    if (!args.out_dir.empty()) sweep.base.out_dir = args.out_dir;

    const std::vector<ntf::SweepRow> rows = (axis == "epsilon")
                                                ? ntf::sweep_epsilon(sweep, args.workers)
                                                : ntf::sweep_gamma(sweep, args.workers);
    ntf::ensure_directory(sweep.base.out_dir);
    const std::string table = ntf::sweep_table_csv(axis, rows);
    ntf::write_text_file(sweep.base.out_dir + "/sweep_" + axis + ".csv", table);
    std::cout << table;
    return 0;
}

int do_stability(const CommonArgs& args) {
    const ntf::RunConfig config = resolve_run_config(args);
    const std::vector<ntf::StabilityRow> rows = ntf::stability_study(config, args.workers);
    ntf::ensure_directory(config.out_dir);
    const std::string table = ntf::stability_table_csv(rows);
    ntf::write_text_file(config.out_dir + "/stability.csv", table);
    std::cout << table;
    return 0;
}

int do_compare(const CommonArgs& args) {
    const ntf::RunConfig config = resolve_run_config(args);
    const ntf::CompareResult r = ntf::compare_solvers(config);
    json j;
    j["l1_distance"] = r.l1_distance;
    j["run_id_characteristics"] = r.run_id_characteristics;
    j["run_id_relaxation"] = r.run_id_relaxation;
    ntf::ensure_directory(config.out_dir);
    ntf::write_text_file(config.out_dir + "/compare_solvers.json", j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver suite for a delayed-lookahead nonlocal traffic model"};
    app.require_subcommand(1);

    CommonArgs validate_args, run_args, eps_args, gamma_args, stab_args, cmp_args;
    CLI::App* validate = app.add_subcommand("validate", "check a configuration and report");
    add_common(validate, validate_args);
    CLI::App* run = app.add_subcommand("run", "execute one configuration");
    add_common(run, run_args);
    CLI::App* sweep_eps = app.add_subcommand("sweep-epsilon", "kernel-scale sweep vs local ref");
    add_common(sweep_eps, eps_args);
    CLI::App* sweep_gamma = app.add_subcommand("sweep-gamma", "delay sweep vs undelayed model");
    add_common(sweep_gamma, gamma_args);
    CLI::App* stability = app.add_subcommand("stability", "perturbation response ratios");
    add_common(stability, stab_args);
    CLI::App* compare = app.add_subcommand("compare-solvers", "characteristics vs relaxation");
    add_common(compare, cmp_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return do_validate(validate_args);
        if (run->parsed()) return do_run(run_args);
        if (sweep_eps->parsed()) return do_sweep(eps_args, "epsilon");
        if (sweep_gamma->parsed()) return do_sweep(gamma_args, "gamma");
        if (stability->parsed()) return do_stability(stab_args);
        if (compare->parsed()) return do_compare(cmp_args);
    } catch (const ntf::AdmissibilityError& e) {
        json err;
        err["error"] = "admissibility";
        err["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const ntf::IoError& e) {
        json err;
        err["error"] = "io";
        err["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 4;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "numerical";
        err["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 3;
    }
    return 0;
}
