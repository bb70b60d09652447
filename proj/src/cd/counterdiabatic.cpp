#include "qotto/cd/counterdiabatic.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qotto::cd {

namespace {
constexpr std::complex<double> kImag{0.0, 1.0};

void check_occupations(const Eigen::VectorXd& p0, int dim) {
    if (p0.size() != dim)
        throw std::invalid_argument("occupations: size must match the Hilbert dimension");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p0.size(); ++i) {
        if (p0[i] < -1e-12) throw std::invalid_argument("occupations: negative entry");
        sum += p0[i];
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("occupations: probabilities must sum to 1");
}
}  // namespace

Matrix cd_term(const HamiltonianPath& path, double t, const SpectralOptions& opts) {
    const SpectralFrame f = spectral_frame(path.h_at(t), t, opts);
    const Matrix hdot_eig = f.eigenvectors.adjoint() * path.hdot_at(t) * f.eigenvectors;
    const int d = path.dim;
    Matrix h1_eig = Matrix::Zero(d, d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            if (m == n) continue;
            h1_eig(m, n) =
                kImag * path.hbar * hdot_eig(m, n) / (f.eigenvalues[n] - f.eigenvalues[m]);
        }
    return f.eigenvectors * h1_eig * f.eigenvectors.adjoint();
}

Matrix cd_term_projector(const HamiltonianPath& path, double t, double fd_step,
                         const SpectralOptions& opts) {
    const double h = fd_step > 0 ? fd_step : path.tau * 2.5e-4;
    const SpectralFrame center = spectral_frame(path.h_at(t), t, opts);

    // Frames at the stencil points, each gauge-aligned to the center so the
    // differenced vectors describe one smooth branch.
    auto aligned = [&](double ts) {
        return spectral_frame_chained(path.h_at(ts), ts, center, opts);
    };
    const SpectralFrame fm2 = aligned(t - 2 * h), fm1 = aligned(t - h), fp1 = aligned(t + h),
                        fp2 = aligned(t + 2 * h);

    const int d = path.dim;
    Matrix h1 = Matrix::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        const Vector dn = (fm2.eigenvectors.col(n) - 8.0 * fm1.eigenvectors.col(n) +
                           8.0 * fp1.eigenvectors.col(n) - fp2.eigenvectors.col(n)) /
                          (12.0 * h);
        const Vector nn = center.eigenvectors.col(n);
        const std::complex<double> berry = nn.adjoint() * dn;
        h1 += kImag * path.hbar *
              (dn * nn.adjoint() - berry * (nn * nn.adjoint()));
    }
    return h1;
}

Matrix h_cd(const HamiltonianPath& path, double t, const SpectralOptions& opts) {
    return path.h_at(t) + cd_term(path, t, opts);
}

CostMetrics cd_cost_metrics(const HamiltonianPath& path, const Eigen::VectorXd& p0,
                            int grid_points, const SpectralOptions& opts) {
    check_occupations(p0, path.dim);
    CostMetrics out;
    out.times = uniform_grid(0.0, path.tau, grid_points);
    out.hs_norm_sq.resize(out.times.size());
    out.energy_variance.resize(out.times.size());
    for (std::size_t i = 0; i < out.times.size(); ++i) {
        const double t = out.times[i];
        const SpectralFrame f = spectral_frame(path.h_at(t), t, opts);
        const Matrix h1 = cd_term(path, t, opts);
        const Matrix h1_sq = h1 * h1;
        out.hs_norm_sq[i] = h1_sq.trace().real();
        double var = 0.0;
        for (int n = 0; n < path.dim; ++n) {
            const std::complex<double> diag =
                f.eigenvectors.col(n).adjoint() * h1_sq * f.eigenvectors.col(n);
            var += p0[n] * diag.real();
        }
        out.energy_variance[i] = var;
    }
    // Optional time-integrated norm cost (trapezoid).
    for (std::size_t i = 0; i + 1 < out.times.size(); ++i) {
        const double dt = out.times[i + 1] - out.times[i];
        out.integrated_norm += 0.5 * dt *
                               (std::sqrt(std::max(0.0, out.hs_norm_sq[i])) +
                                std::sqrt(std::max(0.0, out.hs_norm_sq[i + 1])));
    }
    return out;
}

GeometricTensor geometric_tensor(const HamiltonianPath& path, int level,
                                 const Eigen::VectorXd& lambda_point,
                                 const SpectralOptions& opts) {
    if (level < 0 || level >= path.dim)
        throw std::invalid_argument("geometric_tensor: level out of range");
    const SpectralFrame f = spectral_frame(path.hamiltonian(lambda_point), 0.0, opts);
    const int d = path.dim;
    const int np = path.n_params;

    // |d_mu n> = sum_{m != n} |m> <m|d_mu H|n> / (eps_n - eps_m): already
    // perpendicular to |n>, so Q is the plain Gram matrix of the derivatives.
    Matrix dn(d, np);
    for (int mu = 0; mu < np; ++mu) {
        const Matrix dh_eig =
            f.eigenvectors.adjoint() * path.dh_dlambda(lambda_point, mu) * f.eigenvectors;
        Vector col = Vector::Zero(d);
        for (int m = 0; m < d; ++m) {
            if (m == level) continue;
            col += f.eigenvectors.col(m) * dh_eig(m, level) /
                   (f.eigenvalues[level] - f.eigenvalues[m]);
        }
        dn.col(mu) = col;
    }

    GeometricTensor out;
    out.q = dn.adjoint() * dn;
    out.g = out.q.real();
    out.chi_f = out.g(0, 0);
    return out;
}

double predicted_variance_excess(const HamiltonianPath& path, double t,
                                 const Eigen::VectorXd& p0, const SpectralOptions& opts) {
    check_occupations(p0, path.dim);
    const Eigen::VectorXd lam = path.lambda_at(t);
    const Eigen::VectorXd dot = path.lambda_dot_at(t);
    double excess = 0.0;
    for (int n = 0; n < path.dim; ++n) {
        if (p0[n] == 0.0) continue;
        const GeometricTensor gt = geometric_tensor(path, n, lam, opts);
        excess += p0[n] * (dot.transpose() * gt.g * dot).value();
    }
    return path.hbar * path.hbar * excess;
}

double chi_f_overlap_fd(const HamiltonianPath& path, int level,
                        const Eigen::VectorXd& lambda_point, const Eigen::VectorXd& direction,
                        double delta) {
    if (!(delta > 0)) throw std::invalid_argument("chi_f_overlap_fd: delta must be > 0");
    const SpectralFrame f0 = spectral_frame(path.hamiltonian(lambda_point), 0.0);
    const Vector n0 = f0.eigenvectors.col(level);

    auto perp_norm_sq = [&](double sign) {
        const Eigen::VectorXd lam = lambda_point + sign * delta * direction;
        const SpectralFrame f = spectral_frame(path.hamiltonian(lam), 0.0);
        const Vector n1 = f.eigenvectors.col(level);
        // 1 - |<n0|n1>|^2 as the squared norm of the perpendicular component:
        // no cancellation for small delta.
        const Vector perp = n1 - n0 * (n0.adjoint() * n1);
        return perp.squaredNorm();
    };
    return 0.5 * (perp_norm_sq(+1.0) + perp_norm_sq(-1.0)) / (delta * delta);
}

}  // namespace qotto::cd
