#pragma once

#include <functional>
#include <vector>

#include "qotto/cd/path.hpp"
#include "qotto/cd/spectral.hpp"

namespace qotto::cd {

using Generator = std::function<Matrix(double)>;

/// States sampled on the uniform integration grid.
struct StateTrajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    const Vector& final_state() const { return states.back(); }
};

/// Propagators U(t_k, 0) on the uniform integration grid.
struct UnitaryTrajectory {
    std::vector<double> times;
    std::vector<Matrix> unitaries;
    const Matrix& final_unitary() const { return unitaries.back(); }
    /// U at a grid-aligned time (within 1e-9 * tau); throws otherwise.
    const Matrix& at_time(double t) const;
};

/// Unitary-by-construction integration of i hbar dpsi/dt = H(t) psi: each
/// sub-interval applies the exact exponential of the midpoint generator.
/// Norm drift beyond `norm_tol` aborts; a warning is printed to stderr when
/// ||H|| dt / hbar exceeds 0.1 (step too coarse for the fastest scale).
StateTrajectory evolve_tdse(const Generator& generator, const Vector& psi0, double tau,
                            int steps, double hbar = 1.0, double norm_tol = 1e-8);

/// Same stepping applied to the identity, yielding U(t, 0) for all grid
/// times (i.e. the evolution of every basis state at once).
UnitaryTrajectory evolve_unitary(const Generator& generator, int dim, double tau, int steps,
                                 double hbar = 1.0);

/// Max over steps of || i hbar (dU/dt) U^dag - H(t_mid) ||, the
/// time-evolution-operator consistency check (midpoint finite differences, so
/// the residual floor is ||H||^3 dt^2 / hbar^2 / 6).
double generator_recovery_residual(const UnitaryTrajectory& traj, const Generator& generator,
                                   double hbar = 1.0);

/// Adiabatic trajectory of the level-n eigenstate,
///   |psi_n(t)> = exp(-(i/hbar) Int eps_n ds - Int <n|d_s n> ds) |n(t)>,
/// with both integrals by composite Simpson quadrature on a chained frame
/// grid of `grid_points` (odd) points.
Vector adiabatic_state(const HamiltonianPath& path, int level, double t,
                       int grid_points = 2001, const SpectralOptions& opts = {});

/// |<a|b>|^2 for unit vectors; global-phase insensitive.
double fidelity(const Vector& a, const Vector& b);

}  // namespace qotto::cd
