#include "ntf/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ntf {

namespace {
// Snap interpolation weights this close to a node onto the node, so stored
// values are reproduced exactly despite index arithmetic rounding.
constexpr double kSnap = 1e-9;
}  // namespace

void Grid1D::validate() const {
    if (!(dx > 0.0)) throw AdmissibilityError("grid: dx must be positive");
    if (n_cells < 2) throw AdmissibilityError("grid: need at least 2 cells");
    if (ext_left < 0.0 || ext_left > 1.0 || ext_right < 0.0 || ext_right > 1.0) {
        throw AdmissibilityError("grid: extension values must lie in [0,1]");
    }
}

double sample_profile(const std::vector<double>& values, const Grid1D& grid, double x) {
    const int n = static_cast<int>(values.size());
    auto node = [&](int i) -> double {
        if (i < 0) return grid.ext_left;
        if (i >= n) return grid.ext_right;
        return values[i];
    };
    double u = (x - grid.x_left) / grid.dx - 0.5;
    double i0f = std::floor(u);
    double frac = u - i0f;
    if (frac < kSnap) frac = 0.0;
    if (frac > 1.0 - kSnap) {
        frac = 0.0;
        i0f += 1.0;
    }
    const int i0 = static_cast<int>(i0f);
    if (frac == 0.0) return node(i0);
    return (1.0 - frac) * node(i0) + frac * node(i0 + 1);
}

SpaceTimeField::SpaceTimeField(Grid1D grid, double dt, int history_depth)
    : grid_(grid), dt_(dt), history_depth_(history_depth) {
    grid_.validate();
    if (!(dt_ > 0.0)) throw AdmissibilityError("field: dt must be positive");
    if (history_depth_ < 0) throw AdmissibilityError("field: history_depth must be >= 0");
}

void SpaceTimeField::check_values(const std::vector<double>& values) const {
    if (static_cast<int>(values.size()) != grid_.n_cells) {
        throw NumericalError("field: level size does not match the grid");
    }
    for (double v : values) {
        if (!(v >= -0.05 && v <= 1.05)) {
            throw NumericalError("field: value " + std::to_string(v) +
                                 " outside the sanity band [-0.05, 1.05]");
        }
    }
}

void SpaceTimeField::append_level(std::vector<double> values) {
    check_values(values);
    data_.push_back(std::move(values));
    if (history_depth_ > 0) {
        while (static_cast<int>(data_.size()) > history_depth_) {
            data_.pop_front();
            ++evicted_;
        }
    }
}

void SpaceTimeField::set_level(int level, std::vector<double> values) {
    check_values(values);
    if (level < evicted_ || level >= levels()) {
        throw NumericalError("field: set_level outside the retained window");
    }
    data_[level - evicted_] = std::move(values);
}

void SpaceTimeField::truncate(int keep_levels) {
    if (keep_levels < evicted_ + 1) throw NumericalError("field: cannot truncate past the window");
    while (levels() > keep_levels) data_.pop_back();
}

const std::vector<double>& SpaceTimeField::level_values(int level) const {
    if (data_.empty()) throw NumericalError("field: no levels stored");
    if (level < evicted_ || level >= levels()) {
        throw NumericalError("field: level " + std::to_string(level) + " not retained");
    }
    return data_[level - evicted_];
}

double SpaceTimeField::at(int level, int cell) const {
    if (cell < 0) return grid_.ext_left;
    if (cell >= grid_.n_cells) return grid_.ext_right;
    return level_values(level)[cell];
}

SpaceTimeField::TimeBracket SpaceTimeField::bracket_time(double t) const {
    if (data_.empty()) throw NumericalError("field: no levels stored");
    TimeBracket b;
    const int last = levels() - 1;
    if (t > time_at(last) + kSnap * dt_) {
        throw NumericalError("field: sample at t=" + std::to_string(t) +
                             " is past the stored frontier " + std::to_string(time_at(last)));
    }
    double u = t / dt_;
    if (u < evicted_) u = evicted_;  // constant-in-time extension below the window
    if (u > last) u = last;
    double l0f = std::floor(u);
    double frac = u - l0f;
    if (frac < kSnap) frac = 0.0;
    if (frac > 1.0 - kSnap) {
        frac = 0.0;
        l0f += 1.0;
    }
    b.lower = std::min(static_cast<int>(l0f), last);
    b.upper = std::min(b.lower + 1, last);
    if (b.upper == b.lower) frac = 0.0;
    b.frac = frac;
    return b;
}

double SpaceTimeField::sample(SamplePoint p) const {
    const TimeBracket b = bracket_time(p.t);
    const double lo = sample_profile(level_values(b.lower), grid_, p.x);
    if (b.frac == 0.0) return lo;
    const double hi = sample_profile(level_values(b.upper), grid_, p.x);
    return (1.0 - b.frac) * lo + b.frac * hi;
}

double tv_grid(const std::vector<double>& values) {
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        tv += std::fabs(values[i + 1] - values[i]);
    }
    return tv;
}

double tv_space(const SpaceTimeField& f, int level) { return tv_grid(f.level_values(level)); }

double tv_spacetime(const SpaceTimeField& f, double t_end) {
    const int n = f.grid().n_cells;
    const double dx = f.grid().dx;
    const double dt = f.dt();
    int count = 0;
    while (count < f.levels() && f.time_at(count) <= t_end + 1e-12 * std::max(1.0, t_end)) {
        ++count;
    }
    double total = 0.0;
    for (int l = f.first_retained(); l + 1 < count; ++l) {
        total += tv_space(f, l) * dt;
        const std::vector<double>& a = f.level_values(l);
        const std::vector<double>& b = f.level_values(l + 1);
        double dt_sum = 0.0;
        for (int i = 0; i < n; ++i) dt_sum += std::fabs(b[i] - a[i]);
        total += dt_sum * dx;
    }
    return total;
}

int suggested_history_depth(double kernel_scale, double gamma, double domain_length, double dt) {
    const double span = std::max(8.0 * kernel_scale, 12.0 * gamma * domain_length);
    const int depth = static_cast<int>(std::ceil(span / dt)) + 2;
    return std::max(depth, 4);
}

}  // namespace ntf
