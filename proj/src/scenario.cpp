#include "ntf/scenario.hpp"

#include <cmath>

#include "ntf/errors.hpp"

namespace ntf {

namespace {

double knob(const std::map<std::string, double>& knobs, const std::string& key, double fallback) {
    const auto it = knobs.find(key);
    return it == knobs.end() ? fallback : it->second;
}

}  // namespace

Scenario make_scenario(const std::string& name, const std::map<std::string, double>& knobs) {
    Scenario s;
    s.name = name;
    if (name == "constant") {
        const double value = knob(knobs, "value", 0.3);
        s.profile = [value](double) { return value; };
        s.far_left = s.far_right = value;
    } else if (name == "gaussian-bump") {
        const double background = knob(knobs, "background", 0.3);
        const double amplitude = knob(knobs, "amplitude", 0.3);
        const double width = knob(knobs, "width", 1.0);
        const double center = knob(knobs, "center", 0.0);
        s.profile = [=](double x) {
            const double r = (x - center) / width;
            return background + amplitude * std::exp(-r * r);
        };
        s.far_left = s.far_right = background;
    } else if (name == "smoothed-riemann") {
        const double left = knob(knobs, "left", 0.3);
        const double right = knob(knobs, "right", 0.6);
        const double center = knob(knobs, "center", 0.0);
        const double steepness = knob(knobs, "steepness", 2.0);
        s.profile = [=](double x) {
            return left + (right - left) * 0.5 * (1.0 + std::tanh(steepness * (x - center)));
        };
        s.far_left = left;
        s.far_right = right;
    } else if (name == "sinusoid") {
        const double background = knob(knobs, "background", 0.4);
        const double amplitude = knob(knobs, "amplitude", 0.1);
        const double wavelength = knob(knobs, "wavelength", 5.0);
        s.profile = [=](double x) {
            return background + amplitude * std::sin(2.0 * M_PI * x / wavelength);
        };
        // No limit exists; extend with the mean level.
        s.far_left = s.far_right = background;
    } else {
        throw AdmissibilityError("unknown scenario '" + name + "'");
    }
    return s;
}

std::vector<double> discretize(const Scenario& scenario, const Grid1D& grid) {
    std::vector<double> values(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i) values[i] = scenario.profile(grid.center(i));
    return values;
}

Grid1D make_grid(double x_left, double x_right, int n_cells, const Scenario& scenario) {
    Grid1D grid;
    grid.x_left = x_left;
    grid.n_cells = n_cells;
    grid.dx = (x_right - x_left) / n_cells;
    grid.ext_left = scenario.far_left;
    grid.ext_right = scenario.far_right;
    grid.validate();
    return grid;
}

}  // namespace ntf
