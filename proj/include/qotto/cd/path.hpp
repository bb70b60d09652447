#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

namespace qotto::cd {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Parameterized Hermitian-matrix schedule H(lambda(t)) on [0, tau].
///
/// The schedule is stored as a shape in rescaled time s = t/tau, so the same
/// path can be traversed at any speed with `rescaled()`; lambda_dot then
/// carries the exact 1/tau factor.  When no analytic shape derivative is
/// supplied, centered differences in s are used.
struct HamiltonianPath {
    int dim = 0;
    int n_params = 1;
    double tau = 1.0;
    double hbar = 1.0;

    std::function<Eigen::VectorXd(double)> shape;     // lambda(s), s in [0,1]
    std::function<Eigen::VectorXd(double)> shape_d1;  // d lambda / d s (optional)
    std::function<Matrix(const Eigen::VectorXd&)> hamiltonian;
    std::function<Matrix(const Eigen::VectorXd&, int)> dh_dlambda;

    Eigen::VectorXd lambda_at(double t) const;
    Eigen::VectorXd lambda_dot_at(double t) const;
    Matrix h_at(double t) const;
    /// dH/dt = sum_mu (dH/dlambda^mu) lambda_dot^mu, by the chain rule.
    Matrix hdot_at(double t) const;

    /// Same shape traversed over a different duration.
    HamiltonianPath rescaled(double new_tau) const;
};

/// Two-level sweep H(lambda) = (hbar/2)(delta sigma_x + lambda sigma_z) with
/// the quintic-smoothed schedule lambda(s) from lambda_start to lambda_end
/// (lambda_dot vanishes at both ends, so the control term switches off at the
/// endpoints).  Closed-form eigensystem makes this the main oracle path.
HamiltonianPath qubit_sweep_path(double delta, double lambda_start, double lambda_end,
                                 double tau, double hbar = 1.0);

/// Three-level path H(lambda) = A + lambda B with fixed pseudo-random
/// Hermitian A, B (deterministic in `seed`) and a quintic schedule of lambda
/// from 0 to 1.  The default seed keeps the spectrum comfortably gapped.
HamiltonianPath three_level_smooth_path(double tau, std::uint64_t seed = 20240u,
                                        double hbar = 1.0);

}  // namespace qotto::cd
