#include "qotto/cd/tdse.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <stdexcept>

namespace qotto::cd {

namespace {
constexpr std::complex<double> kImag{0.0, 1.0};

// Exact exponential exp(-i H dt / hbar) of a Hermitian generator.
Matrix step_exponential(const Matrix& h, double dt, double hbar) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("tdse: eigensolver failed inside a step");
    const Eigen::VectorXd& w = es.eigenvalues();
    Vector phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        phases[i] = std::exp(-kImag * (w[i] * dt / hbar));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// The Frobenius norm upper-bounds the spectral norm and is cheap.
bool step_too_coarse(const Matrix& h, double dt, double hbar) {
    return h.norm() * dt / hbar > 0.1;
}
}  // namespace

const Matrix& UnitaryTrajectory::at_time(double t) const {
    const double tau = times.back();
    const double dt = times.size() > 1 ? times[1] - times[0] : 1.0;
    const auto idx = static_cast<std::size_t>(std::llround(t / dt));
    if (idx >= times.size() || std::abs(times[idx] - t) > 1e-9 * std::max(tau, 1.0))
        throw std::invalid_argument("unitary trajectory: time is not grid-aligned");
    return unitaries[idx];
}

StateTrajectory evolve_tdse(const Generator& generator, const Vector& psi0, double tau,
                            int steps, double hbar, double norm_tol) {
    if (steps < 1) throw std::invalid_argument("tdse: steps must be >= 1");
    if (!(tau > 0)) throw std::invalid_argument("tdse: tau must be > 0");
    const double dt = tau / steps;
    StateTrajectory traj;
    traj.times.resize(steps + 1);
    traj.states.resize(steps + 1);
    traj.times[0] = 0.0;
    traj.states[0] = psi0;
    const double norm0 = psi0.norm();

    bool warned = false;
    Vector psi = psi0;
    for (int i = 0; i < steps; ++i) {
        const double t_mid = (static_cast<double>(i) + 0.5) * dt;
        const Matrix h = generator(t_mid);
        if (!warned && step_too_coarse(h, dt, hbar)) {
            std::cerr << "[qotto] warning: ||H|| dt / hbar > 0.1; increase the step count\n";
            warned = true;
        }
        psi = step_exponential(h, dt, hbar) * psi;
        traj.times[i + 1] = dt * (i + 1);
        traj.states[i + 1] = psi;
        if (std::abs(psi.norm() - norm0) > norm_tol)
            throw std::runtime_error("tdse: norm drift beyond tolerance at t=" +
                                     std::to_string(traj.times[i + 1]));
    }
    traj.times.back() = tau;
    return traj;
}

UnitaryTrajectory evolve_unitary(const Generator& generator, int dim, double tau, int steps,
                                 double hbar) {
    if (steps < 1) throw std::invalid_argument("tdse: steps must be >= 1");
    if (!(tau > 0)) throw std::invalid_argument("tdse: tau must be > 0");
    const double dt = tau / steps;
    UnitaryTrajectory traj;
    traj.times.resize(steps + 1);
    traj.unitaries.resize(steps + 1);
    traj.times[0] = 0.0;
    traj.unitaries[0] = Matrix::Identity(dim, dim);

    Matrix u = Matrix::Identity(dim, dim);
    for (int i = 0; i < steps; ++i) {
        const double t_mid = (static_cast<double>(i) + 0.5) * dt;
        u = step_exponential(generator(t_mid), dt, hbar) * u;
        traj.times[i + 1] = dt * (i + 1);
        traj.unitaries[i + 1] = u;
    }
    traj.times.back() = tau;
    return traj;
}

double generator_recovery_residual(const UnitaryTrajectory& traj, const Generator& generator,
                                   double hbar) {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < traj.times.size(); ++i) {
        const double dt = traj.times[i + 1] - traj.times[i];
        const double t_mid = 0.5 * (traj.times[i] + traj.times[i + 1]);
        const Matrix du = (traj.unitaries[i + 1] - traj.unitaries[i]) / dt;
        const Matrix u_mid = 0.5 * (traj.unitaries[i + 1] + traj.unitaries[i]);
        const Matrix recovered = kImag * hbar * du * u_mid.adjoint();
        worst = std::max(worst, (recovered - generator(t_mid)).norm());
    }
    return worst;
}

Vector adiabatic_state(const HamiltonianPath& path, int level, double t, int grid_points,
                       const SpectralOptions& opts) {
    if (level < 0 || level >= path.dim)
        throw std::invalid_argument("adiabatic_state: level out of range");
    if (t == 0.0) {
        const SpectralFrame f = spectral_frame(path.h_at(0.0), 0.0, opts);
        return f.eigenvectors.col(level);
    }
    if (grid_points % 2 == 0) ++grid_points;  // Simpson needs an even interval count
    if (grid_points < 5) grid_points = 5;
    const std::vector<double> grid = uniform_grid(0.0, t, grid_points);
    const std::vector<SpectralFrame> frames = spectral_path(path, grid, opts);
    const double ds = grid[1] - grid[0];

    // Dynamical phase integrand eps_n(t)/hbar.
    std::vector<double> eps(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) eps[i] = frames[i].eigenvalues[level];

    // Geometric integrand <n|d_t n>, central differences on the chained grid.
    // Normalization makes it purely imaginary exactly; the finite-difference
    // real residue is discarded so the factor stays a phase.
    std::vector<std::complex<double>> geo(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 < frames.size() ? i + 1 : i;
        const Vector dn = (frames[hi].eigenvectors.col(level) -
                           frames[lo].eigenvectors.col(level)) /
                          (static_cast<double>(hi - lo) * ds);
        const std::complex<double> raw =
            frames[i].eigenvectors.col(level).adjoint() * dn;
        geo[i] = std::complex<double>(0.0, raw.imag());
    }

    auto simpson = [&](auto&& values) {
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i + 2 < frames.size(); i += 2)
            acc += (ds / 3.0) * (values(i) + 4.0 * values(i + 1) + values(i + 2));
        return acc;
    };
    const std::complex<double> dyn = simpson([&](std::size_t i) {
        return std::complex<double>(eps[i], 0.0);
    });
    const std::complex<double> geom = simpson([&](std::size_t i) { return geo[i]; });

    const std::complex<double> phase = std::exp(-kImag * dyn / path.hbar - geom);
    return phase * frames.back().eigenvectors.col(level);
}

double fidelity(const Vector& a, const Vector& b) {
    const std::complex<double> ovl = a.adjoint() * b;
    return std::norm(ovl) / (a.squaredNorm() * b.squaredNorm());
}

}  // namespace qotto::cd
