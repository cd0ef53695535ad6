#pragma once

#include <string>
#include <vector>

#include "ntf/config.hpp"
#include "ntf/diagnostics.hpp"
#include "ntf/model.hpp"
#include "ntf/solution.hpp"

namespace ntf {

inline constexpr int kSchemaVersion = 1;

// Doubles are printed with %.17g everywhere so artifacts round-trip exactly
// and re-runs are byte-identical.
std::string format_double(double v);

void ensure_directory(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Long-format snapshot rows (t, x, rho, q) at the stored levels nearest the
// requested output times (all levels when the list is empty).
void write_snapshots_csv(const std::string& path, const SpaceTimeSolution& solution,
                         const std::vector<double>& output_times);

// Sidecar metadata: resolved config, grid, solver, schema version, run id.
void write_params_json(const std::string& path, const RunConfig& config,
                       const AdmissibilityReport& admissibility, const std::string& run_id);

void write_diagnostics_csv(const std::string& path, const RunConfig& config,
                           const DiagnosticsReport& report, const std::string& run_id);

// Pass/fail keyed by the estimate each measurement tests. Only the bound with
// a per-run threshold gets a verdict; band-style estimates report values and
// are judged at sweep level.
void write_passfail_json(const std::string& path, const RunConfig& config,
                         const DiagnosticsReport& report, const std::string& run_id);

void write_telemetry_json(const std::string& path, const SolveTelemetry& telemetry,
                          const std::string& run_id);

void write_tvd_csv(const std::string& path, const std::vector<TvdRow>& rows);

// Final-profile plot data plus a plain gnuplot script next to it.
void write_plot_files(const std::string& out_dir, const SpaceTimeSolution& solution);

}  // namespace ntf
