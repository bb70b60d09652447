#pragma once

#include <vector>

#include "qotto/cd/counterdiabatic.hpp"
#include "qotto/cd/tdse.hpp"

namespace qotto::cd {

/// Two-point-measurement work distribution: projective energy measurements
/// at t' = 0 and t' = t.  Support points are the differences
/// E_k(t) - E_n(0); at interior times the measurement basis is the eigenbasis
/// of the full driven Hamiltonian H + H1, which coincides with that of H only
/// at the endpoints of schedules whose control term vanishes there.
struct WorkDistribution {
    std::vector<double> w;  // support, ascending
    std::vector<double> p;  // probabilities, sum to 1
    double time0 = 0.0;
    double time1 = 0.0;
    Eigen::VectorXd initial_occupations;

    double mean() const;
    double variance() const;
    double total() const;
    /// Coalesce support points closer than w_tol (probability-weighted).
    WorkDistribution merged(double w_tol) const;
};

enum class WorkMode {
    CounterDiabatic,  // evolve under H + H1, measure in the H_CD eigenbasis
    Adiabatic,        // transition probabilities are the Kronecker delta
};

/// Distribution at time t for initial occupations p0 of the t=0 eigenbasis.
/// The CD mode integrates the driven dynamics with `steps` sub-intervals.
WorkDistribution work_distribution(const HamiltonianPath& path, const Eigen::VectorXd& p0,
                                   double t, WorkMode mode, int steps = 4000,
                                   const SpectralOptions& opts = {});

/// CD-mode distribution reusing a precomputed propagator trajectory under
/// H + H1 (t must be grid-aligned).
WorkDistribution work_distribution_at(const HamiltonianPath& path, const Eigen::VectorXd& p0,
                                      const UnitaryTrajectory& traj, double t,
                                      const SpectralOptions& opts = {});

/// L-infinity distance between the probability masses of two distributions
/// after clustering their combined support within w_tol.
double linf_distance(const WorkDistribution& a, const WorkDistribution& b, double w_tol);

}  // namespace qotto::cd
