#pragma once

#include <vector>

#include "ntf/model.hpp"
#include "ntf/scenario.hpp"

namespace test_support {

inline ntf::ModelParams greenshields_exponential(double gamma, double epsilon) {
    ntf::ModelParams params;
    params.gamma = gamma;
    params.kernel = ntf::KernelSpec::exponential(epsilon);
    params.velocity = ntf::VelocityModel::greenshields();
    return params;
}

struct Setup {
    ntf::Grid1D grid;
    std::vector<double> rho0;
};

inline Setup scenario_setup(const std::string& name, double x_left, double x_right, int n_cells,
                            const std::map<std::string, double>& knobs = {}) {
    const ntf::Scenario scenario = ntf::make_scenario(name, knobs);
    Setup s;
    s.grid = ntf::make_grid(x_left, x_right, n_cells, scenario);
    s.rho0 = ntf::discretize(scenario, s.grid);
    return s;
}

inline Setup bump_setup(double x_left = -8.0, double x_right = 8.0, int n_cells = 400) {
    return scenario_setup("gaussian-bump", x_left, x_right, n_cells);
}

inline Setup constant_setup(double value, double x_left = -8.0, double x_right = 8.0,
                            int n_cells = 200) {
    return scenario_setup("constant", x_left, x_right, n_cells, {{"value", value}});
}

}  // namespace test_support
