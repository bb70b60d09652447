#pragma once

#include <vector>

#include "qotto/cd/path.hpp"
#include "qotto/cd/spectral.hpp"

namespace qotto::cd {

/// Auxiliary control term in its off-diagonal form,
///   H1 = i hbar sum_n sum_{m != n} |m><m| Hdot |n><n| / (eps_n - eps_m),
/// assembled in the instantaneous eigenbasis and rotated back.  Hermitian,
/// gauge-independent, zero diagonal in the eigenbasis.
Matrix cd_term(const HamiltonianPath& path, double t, const SpectralOptions& opts = {});

/// The same operator built from the projector form
///   H1 = i hbar sum_n (|d_t n><n| - <n|d_t n> |n><n|),
/// with the eigenvector derivative taken by a 5-point finite-difference
/// stencil gauge-aligned to the central frame.  Used as an independent check
/// of cd_term; the two agree to ~1e-11 on smooth paths.
Matrix cd_term_projector(const HamiltonianPath& path, double t, double fd_step = 0.0,
                         const SpectralOptions& opts = {});

/// H(t) + H1(t).
Matrix h_cd(const HamiltonianPath& path, double t, const SpectralOptions& opts = {});

/// Time-energy cost diagnostics of the control term on a uniform grid:
/// hs_norm_sq = tr H1^2 and the energy variance
/// sum_n p0_n <n(t)|H1^2|n(t)>, both diverging as 1/tau^2 at fixed s = t/tau.
struct CostMetrics {
    std::vector<double> times;
    std::vector<double> hs_norm_sq;
    std::vector<double> energy_variance;
    double integrated_norm = 0.0;  // trapezoid integral of sqrt(hs_norm_sq)
};

CostMetrics cd_cost_metrics(const HamiltonianPath& path, const Eigen::VectorXd& p0,
                            int grid_points = 201, const SpectralOptions& opts = {});

/// Quantum geometric tensor of the level-n manifold at a parameter point,
///   Q_{mu nu} = <d_mu n| (1 - |n><n|) |d_nu n>,
/// with eigenstate derivatives from the perturbative sum.  g = Re Q; for a
/// single parameter g equals the fidelity susceptibility chi_f.
struct GeometricTensor {
    Eigen::MatrixXcd q;
    Eigen::MatrixXd g;
    double chi_f = 0.0;  // g(0,0)
};

GeometricTensor geometric_tensor(const HamiltonianPath& path, int level,
                                 const Eigen::VectorXd& lambda_point,
                                 const SpectralOptions& opts = {});

/// hbar^2 sum_n p0_n g^(n)_{mu nu} lambda_dot^mu lambda_dot^nu at time t:
/// the predicted excess of the work variance over its adiabatic value.
double predicted_variance_excess(const HamiltonianPath& path, double t,
                                 const Eigen::VectorXd& p0, const SpectralOptions& opts = {});

/// Fidelity susceptibility along `direction` from the overlap decay
/// |<n(lambda)|n(lambda + delta u)>|^2 = 1 - delta^2 chi + O(delta^4 terms
/// after symmetrization); evaluated as a symmetric perpendicular-norm
/// difference, which avoids both the O(delta) bias of the one-sided form and
/// the cancellation in 1 - |overlap|^2.
double chi_f_overlap_fd(const HamiltonianPath& path, int level,
                        const Eigen::VectorXd& lambda_point, const Eigen::VectorXd& direction,
                        double delta = 1e-4);

}  // namespace qotto::cd
