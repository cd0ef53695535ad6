#pragma once

#include <vector>

#include "ntf/solution.hpp"
#include "ntf/velocity.hpp"

namespace ntf {

/// Godunov interface flux for the scalar law with f(rho) = rho v(rho),
/// using the general minimization form (concavity is not assumed):
///   F(l, r) = min over [l, r] of f   if l <= r,
///             max over [r, l] of f   otherwise.
/// Interior extrema of f on [0,1] are located once by bracketed search on f'
/// and cached.
class GodunovFlux {
   public:
    explicit GodunovFlux(const VelocityModel& velocity);
    double operator()(double rho_left, double rho_right) const;
    const std::vector<double>& critical_points() const { return critical_points_; }

   private:
    const VelocityModel* velocity_;
    std::vector<double> critical_points_;
};

double godunov_flux(double rho_left, double rho_right, const VelocityModel& velocity);

// Forward-Euler Godunov scheme for the local conservation law; a monotone
// scheme, so the computed solution is the entropy-admissible one. The dt is
// chosen from the CFL target against the sampled max |f'|. The q component of
// the returned solution mirrors rho (local equilibrium).
SpaceTimeSolution solve_lwr(const Grid1D& grid, const std::vector<double>& rho0,
                            const VelocityModel& velocity, double T, double cfl = 0.8);

}  // namespace ntf
