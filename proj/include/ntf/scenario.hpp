#pragma once

#include <map>
#include <string>
#include <vector>

#include "ntf/grid.hpp"
#include "ntf/numerics.hpp"

namespace ntf {

/// Analytic initial-density profile plus the plateau values used to extend the
/// truncated domain. Every library member keeps the density away from 0 and 1.
struct Scenario {
    std::string name;
    ScalarFn profile;  // rho0(x)
    double far_left = 0.0;
    double far_right = 0.0;
};

// Library: constant (value), gaussian-bump (background, amplitude, width,
// center), smoothed-riemann (left, right, center, steepness), sinusoid
// (background, amplitude, wavelength). Unknown names throw.
Scenario make_scenario(const std::string& name, const std::map<std::string, double>& knobs = {});

std::vector<double> discretize(const Scenario& scenario, const Grid1D& grid);

// Grid whose extension plateaus are the scenario's far-field values.
Grid1D make_grid(double x_left, double x_right, int n_cells, const Scenario& scenario);

}  // namespace ntf
