#pragma once

#include <deque>
#include <vector>

#include "ntf/errors.hpp"

namespace ntf {

/// Uniform 1-D cell grid on [x_left, x_left + n_cells*dx]. Values outside the
/// domain are the constant plateau values ext_left / ext_right, so compactly
/// supported perturbations behave as if posed on the whole line.
struct Grid1D {
    double x_left = 0.0;
    double dx = 1.0;
    int n_cells = 2;
    double ext_left = 0.0;
    double ext_right = 0.0;

    double center(int i) const { return x_left + (i + 0.5) * dx; }
    double x_right() const { return x_left + n_cells * dx; }
    double length() const { return n_cells * dx; }
    void validate() const;
};

struct SamplePoint {
    double t = 0.0;
    double x = 0.0;
};

// Linear interpolation of per-cell values at position x, with ghost nodes at
// the plateau values beyond the domain. Monotone: never overshoots the two
// neighbouring node values.
double sample_profile(const std::vector<double>& values, const Grid1D& grid, double x);

/// Time history of a cell field at uniform dt. Levels are appended in time
/// order; when history_depth > 0 the oldest levels are dropped once the
/// retained window exceeds that many levels (delay quadrature ring buffer).
class SpaceTimeField {
   public:
    SpaceTimeField() = default;  // empty placeholder; populate by assignment
    SpaceTimeField(Grid1D grid, double dt, int history_depth = 0);

    const Grid1D& grid() const { return grid_; }
    double dt() const { return dt_; }
    int history_depth() const { return history_depth_; }

    int levels() const { return evicted_ + static_cast<int>(data_.size()); }
    int first_retained() const { return evicted_; }
    double time_at(int level) const { return level * dt_; }
    double latest_time() const { return time_at(levels() - 1); }

    // Values must stay inside the hard sanity band [-0.05, 1.05].
    void append_level(std::vector<double> values);
    // Rewrite a retained level in place; solver iteration workspace only.
    void set_level(int level, std::vector<double> values);
    // Drop levels from the back until only keep_levels remain (window retry).
    void truncate(int keep_levels);

    const std::vector<double>& level_values(int level) const;

    // Cell access with plateau ghosts for out-of-range cell indices.
    double at(int level, int cell) const;

    // Bilinear space-time interpolation. Times before the earliest retained
    // level resolve to that level (constant-in-time extension of the initial
    // data); times past the stored frontier throw.
    double sample(SamplePoint p) const;
    double sample_at(double t, double x) const { return sample({t, x}); }

    struct TimeBracket {
        int lower = 0;
        int upper = 0;
        double frac = 0.0;  // weight of the upper level
    };
    TimeBracket bracket_time(double t) const;

   private:
    void check_values(const std::vector<double>& values) const;

    Grid1D grid_;
    double dt_ = 0.0;
    int history_depth_ = 0;
    int evicted_ = 0;
    std::deque<std::vector<double>> data_;
};

// Discrete total variation of one level: sum of |cell jumps| across the
// interior interfaces.
double tv_grid(const std::vector<double>& values);
double tv_space(const SpaceTimeField& f, int level);

// Space-time variation surrogate for the integral of |d_t rho| + |d_x rho|
// over [0, t_end] x domain: per time interval, spatial TV * dt plus the
// cellwise time increment * dx.
double tv_spacetime(const SpaceTimeField& f, double t_end);

// Ring-buffer size so the retained window always covers the weights the
// delay quadrature can still see: max(8*scale, 12*gamma*domain_length)/dt.
int suggested_history_depth(double kernel_scale, double gamma, double domain_length, double dt);

}  // namespace ntf
