#include "ntf/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ntf/errors.hpp"
#include "ntf/numerics.hpp"

namespace ntf {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string ConfigText::get(const std::string& key, const std::string& fallback) const {
    const auto it = entries.find(key);
    return it == entries.end() ? fallback : it->second;
}

double ConfigText::get_double(const std::string& key, double fallback) const {
    const auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (trim(it->second.substr(pos)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw AdmissibilityError("config: key '" + key + "' is not a number: " + it->second);
}

int ConfigText::get_int(const std::string& key, int fallback) const {
    const auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    return static_cast<int>(get_double(key, 0.0));
}

std::vector<double> ConfigText::get_list(const std::string& key) const {
    std::vector<double> out;
    const auto it = entries.find(key);
    if (it == entries.end()) return out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw AdmissibilityError("config: key '" + key + "' has a bad list entry: " + item);
        }
    }
    return out;
}

std::string ConfigText::canonical() const {
    std::string out;
    for (const auto& [k, v] : entries) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

ConfigText parse_config(const std::string& text) {
    ConfigText config;
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw AdmissibilityError("config: bad section header at line " +
                                         std::to_string(line_no));
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw AdmissibilityError("config: expected key=value at line " +
                                     std::to_string(line_no));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw AdmissibilityError("config: empty key at line " + std::to_string(line_no));
        }
        config.entries[section.empty() ? key : section + "." + key] = value;
    }
    return config;
}

ConfigText load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

void apply_override(ConfigText& config, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw AdmissibilityError("override must look like section.key=value: " + assignment);
    }
    config.entries[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

RunConfig run_config_from(const ConfigText& text) {
    RunConfig c;
    c.scenario = text.get("run.scenario", c.scenario);
    c.solver = text.get("run.solver", c.solver);
    c.T = text.get_double("run.T", c.T);
    c.output_times = text.get_list("run.output_times");
    c.out_dir = text.get("run.out_dir", c.out_dir);

    c.velocity = text.get("model.velocity", c.velocity);
    c.free_speed = text.get_double("model.free_speed", c.free_speed);
    c.kernel = text.get("model.kernel", c.kernel);
    c.epsilon = text.get_double("model.epsilon", c.epsilon);
    c.truncation_tol = text.get_double("model.truncation_tol", c.truncation_tol);
    c.gamma = text.get_double("model.gamma", c.gamma);

    c.x_left = text.get_double("grid.x_left", c.x_left);
    c.x_right = text.get_double("grid.x_right", c.x_right);
    c.n_cells = text.get_int("grid.n_cells", c.n_cells);

    for (const auto& [key, value] : text.entries) {
        if (key.rfind("scenario.", 0) == 0) {
            c.scenario_knobs[key.substr(9)] = text.get_double(key, 0.0);
        }
    }

    c.cfl = text.get_double("solver.cfl", c.cfl);
    c.dt_factor = text.get_double("solver.dt_factor", c.dt_factor);
    c.picard_window = text.get_double("solver.picard_window", c.picard_window);
    c.picard_tol = text.get_double("solver.picard_tol", c.picard_tol);
    c.picard_max_iters = text.get_int("solver.picard_max_iters", c.picard_max_iters);
    c.ode_steps = text.get_int("solver.ode_steps", c.ode_steps);
    c.collect_tvd = text.get_int("solver.collect_tvd", c.collect_tvd ? 1 : 0) != 0;
    return c;
}

SweepConfig sweep_config_from(const ConfigText& text) {
    SweepConfig s;
    s.base = run_config_from(text);
    s.axis = text.get("sweep.axis", s.axis);
    s.values = text.get_list("sweep.values");
    s.target = text.get("sweep.target", s.target);
    if (s.values.empty()) throw AdmissibilityError("sweep: no values given");
    const bool increasing = s.values.back() > s.values.front();
    for (std::size_t i = 0; i + 1 < s.values.size(); ++i) {
        const bool step_up = s.values[i + 1] > s.values[i];
        if (s.values[i + 1] == s.values[i] || step_up != increasing) {
            throw AdmissibilityError("sweep: value list must be strictly monotone");
        }
    }
    return s;
}

std::vector<std::string> validate_run_config(const RunConfig& c) {
    std::vector<std::string> issues;
    if (c.scenario != "constant" && c.scenario != "gaussian-bump" &&
        c.scenario != "smoothed-riemann" && c.scenario != "sinusoid") {
        issues.push_back("unknown scenario '" + c.scenario + "'");
    }
    if (c.velocity != "greenshields" && c.velocity != "quadratic") {
        issues.push_back("unknown velocity preset '" + c.velocity + "'");
    }
    if (c.kernel != "exponential") {
        issues.push_back("unknown kernel preset '" + c.kernel + "'");
    }
    if (c.solver != "characteristics" && c.solver != "relaxation" && c.solver != "lwr") {
        issues.push_back("unknown solver '" + c.solver + "'");
    }
    if (!(c.epsilon > 0.0)) issues.push_back("epsilon must be positive");
    if (c.gamma < 0.0) issues.push_back("gamma must be nonnegative");
    if (!(c.x_right > c.x_left)) issues.push_back("grid: x_right must exceed x_left");
    if (c.n_cells < 2) issues.push_back("grid: n_cells must be at least 2");
    if (!(c.T > 0.0)) issues.push_back("T must be positive");
    if (!(c.cfl > 0.0 && c.cfl <= 0.9)) issues.push_back("cfl must lie in (0, 0.9]");
    for (double t : c.output_times) {
        if (t < 0.0 || t > c.T) issues.push_back("output time outside [0, T]");
    }
    return issues;
}

std::string serialize_run_config(const RunConfig& c) {
    ConfigText text;
    auto put = [&](const std::string& key, const std::string& value) {
        text.entries[key] = value;
    };
    put("run.scenario", c.scenario);
    put("run.solver", c.solver);
    put("run.T", fmt_double(c.T));
    {
        std::string times;
        for (std::size_t i = 0; i < c.output_times.size(); ++i) {
            if (i) times += ",";
            times += fmt_double(c.output_times[i]);
        }
        put("run.output_times", times);
    }
    put("model.velocity", c.velocity);
    put("model.free_speed", fmt_double(c.free_speed));
    put("model.kernel", c.kernel);
    put("model.epsilon", fmt_double(c.epsilon));
    put("model.truncation_tol", fmt_double(c.truncation_tol));
    put("model.gamma", fmt_double(c.gamma));
    put("grid.x_left", fmt_double(c.x_left));
    put("grid.x_right", fmt_double(c.x_right));
    put("grid.n_cells", std::to_string(c.n_cells));
    for (const auto& [k, v] : c.scenario_knobs) put("scenario." + k, fmt_double(v));
    put("solver.cfl", fmt_double(c.cfl));
    put("solver.dt_factor", fmt_double(c.dt_factor));
    put("solver.picard_window", fmt_double(c.picard_window));
    put("solver.picard_tol", fmt_double(c.picard_tol));
    put("solver.picard_max_iters", std::to_string(c.picard_max_iters));
    put("solver.ode_steps", std::to_string(c.ode_steps));
    put("solver.collect_tvd", c.collect_tvd ? "1" : "0");
    return text.canonical();
}

std::string config_hash(const RunConfig& config) {
    return hex64(fnv1a64(serialize_run_config(config)));
}

}  // namespace ntf
