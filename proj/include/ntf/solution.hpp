#pragma once

#include <string>
#include <vector>

#include "ntf/grid.hpp"

namespace ntf {

struct WindowTelemetry {
    double t_begin = 0.0;
    double t_end = 0.0;
    int iterations = 0;
    std::vector<double> residuals;  // sup-norm fixed-point residual per iteration
};

struct TvdRow {
    double t = 0.0;
    double tv_u = 0.0;
    double tv_h = 0.0;
    double violation = 0.0;
};

struct SolveTelemetry {
    std::string solver;
    double dt = 0.0;
    int n_levels = 0;
    std::vector<WindowTelemetry> windows;  // characteristic solver
    std::vector<TvdRow> tvd;               // relaxation solver
};

/// Density / nonlocal-average trajectories on the same grid and time ladder.
struct SpaceTimeSolution {
    SpaceTimeField rho;
    SpaceTimeField q;
    SolveTelemetry telemetry;
};

}  // namespace ntf
