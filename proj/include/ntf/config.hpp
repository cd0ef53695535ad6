#pragma once

#include <map>
#include <string>
#include <vector>

namespace ntf {

/// Flat sectioned key=value configuration ("[section]" headers, '#' or ';'
/// comments). Keys are addressed as "section.key".
struct ConfigText {
    std::map<std::string, std::string> entries;

    bool has(const std::string& key) const { return entries.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<double> get_list(const std::string& key) const;

    // Canonical serialization (sorted keys) used for hashing.
    std::string canonical() const;
};

ConfigText parse_config(const std::string& text);
ConfigText load_config(const std::string& path);
// Overrides of the form "section.key=value".
void apply_override(ConfigText& config, const std::string& assignment);

/// Fully resolved run request. Deterministic: no seeds, no clock.
struct RunConfig {
    std::string scenario = "gaussian-bump";
    std::map<std::string, double> scenario_knobs;

    std::string velocity = "greenshields";  // greenshields | quadratic
    double free_speed = 1.0;
    std::string kernel = "exponential";
    double epsilon = 0.1;
    double truncation_tol = 1e-10;
    double gamma = 0.1;

    double x_left = -8.0;
    double x_right = 8.0;
    int n_cells = 400;

    double T = 1.0;
    std::string solver = "relaxation";  // characteristics | relaxation | lwr
    std::vector<double> output_times;
    std::string out_dir = "out";

    double cfl = 0.8;         // finite-volume solvers
    double dt_factor = 0.5;   // characteristics: dt = dt_factor * dx / v_max
    double picard_window = 0.0;
    double picard_tol = 1e-9;
    int picard_max_iters = 50;
    int ode_steps = 2;
    bool collect_tvd = true;
};

struct SweepConfig {
    RunConfig base;
    std::string axis = "epsilon";  // epsilon | gamma
    std::vector<double> values;
    std::string target = "lwr-fine-grid";  // or nonlocal-in-space-limit
};

RunConfig run_config_from(const ConfigText& text);
SweepConfig sweep_config_from(const ConfigText& text);

// Structured validation issues; empty means the config can be executed.
std::vector<std::string> validate_run_config(const RunConfig& config);

// Hash of the canonical key=value serialization; stamped on every artifact.
std::string config_hash(const RunConfig& config);
std::string serialize_run_config(const RunConfig& config);

}  // namespace ntf
