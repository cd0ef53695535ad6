#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ntf/config.hpp"
#include "ntf/diagnostics.hpp"
#include "ntf/model.hpp"
#include "ntf/solution.hpp"

namespace ntf {

struct RunResult {
    RunConfig config;
    ModelParams params;
    Grid1D grid;
    std::vector<double> rho0;
    SpaceTimeSolution solution;
    DiagnosticsReport diagnostics;
    std::string run_id;
};

// Build model/grid/data from the config. Throws AdmissibilityError on a
// config or admissibility problem; a nonzero gamma==0 run selects the
// undelayed (purely spatial) nonlocal average automatically.
ModelParams build_params(const RunConfig& config);
Grid1D build_grid(const RunConfig& config);
std::vector<double> build_rho0(const RunConfig& config, const Grid1D& grid);

// Solve + diagnose; no filesystem access.
RunResult execute_run(const RunConfig& config);

// params.json, snapshots.csv, diagnostics.csv, passfail.json, telemetry.json,
// plot files, and tvd.csv for the relaxation solver.
void write_run_artifacts(const RunResult& result, const std::string& out_dir);

// Run f(0..n-1) on a pool; results must be written to index-owned slots.
// Deterministic regardless of the worker count.
void parallel_for_ordered(int n, int workers, const std::function<void(int)>& f);

struct SweepRow {
    double value = 0.0;  // swept parameter
    double l1_error = 0.0;
    double tv_ratio = 0.0;
    double q_rho_ratio = 0.0;
    double entropy_min = 0.0;
    std::string run_id;
};

// Epsilon sweep against a shared local-model reference on a 4x refined grid:
// per member, the space-time L1 distance plus the banded diagnostics.
std::vector<SweepRow> sweep_epsilon(const SweepConfig& sweep, int workers);

// Gamma sweep against the undelayed (gamma = 0) nonlocal solution, both sides
// computed by the characteristic solver.
std::vector<SweepRow> sweep_gamma(const SweepConfig& sweep, int workers);

std::string sweep_table_csv(const std::string& axis, const std::vector<SweepRow>& rows);

struct StabilityRow {
    std::string family;  // shift | amplitude
    double size = 0.0;   // L1 size of the perturbation
    double ratio = 0.0;
    double theorem_shape = 0.0;
};

// Shift (1 and 2 cells) and amplitude (1e-2, 1e-3) perturbations of the
// configured scenario; one row per perturbed run.
std::vector<StabilityRow> stability_study(const RunConfig& config, int workers);
std::string stability_table_csv(const std::vector<StabilityRow>& rows);

struct CompareResult {
    double l1_distance = 0.0;  // characteristics vs relaxation
    std::string run_id_characteristics;
    std::string run_id_relaxation;
};
CompareResult compare_solvers(const RunConfig& config);

}  // namespace ntf
