#include "qotto/cd/path.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "qotto/protocol.hpp"

namespace qotto::cd {

Eigen::VectorXd HamiltonianPath::lambda_at(double t) const { return shape(t / tau); }

Eigen::VectorXd HamiltonianPath::lambda_dot_at(double t) const {
    const double s = t / tau;
    if (shape_d1) return shape_d1(s) / tau;
    const double h = 1e-6;
    const double s0 = std::clamp(s, h, 1.0 - h);
    return (shape(s0 + h) - shape(s0 - h)) / (2.0 * h * tau);
}

Matrix HamiltonianPath::h_at(double t) const { return hamiltonian(lambda_at(t)); }

Matrix HamiltonianPath::hdot_at(double t) const {
    const Eigen::VectorXd lam = lambda_at(t);
    const Eigen::VectorXd dot = lambda_dot_at(t);
    Matrix out = Matrix::Zero(dim, dim);
    for (int mu = 0; mu < n_params; ++mu) out += dh_dlambda(lam, mu) * dot[mu];
    return out;
}

HamiltonianPath HamiltonianPath::rescaled(double new_tau) const {
    if (!(new_tau > 0)) throw std::invalid_argument("path: tau must be > 0");
    HamiltonianPath copy = *this;
    copy.tau = new_tau;
    return copy;
}

HamiltonianPath qubit_sweep_path(double delta, double lambda_start, double lambda_end,
                                 double tau, double hbar) {
    if (!(tau > 0)) throw std::invalid_argument("qubit path: tau must be > 0");
    HamiltonianPath p;
    p.dim = 2;
    p.n_params = 1;
    p.tau = tau;
    p.hbar = hbar;
    p.shape = [=](double s) {
        Eigen::VectorXd v(1);
        v[0] = lambda_start + (lambda_end - lambda_start) * quintic::q(s);
        return v;
    };
    p.shape_d1 = [=](double s) {
        Eigen::VectorXd v(1);
        v[0] = (lambda_end - lambda_start) * quintic::q1(s);
        return v;
    };
    p.hamiltonian = [=](const Eigen::VectorXd& lam) {
        Matrix h(2, 2);
        const double z = lam[0];
        h << 0.5 * hbar * z, 0.5 * hbar * delta, 0.5 * hbar * delta, -0.5 * hbar * z;
        return h;
    };
    p.dh_dlambda = [=](const Eigen::VectorXd&, int) {
        Matrix h(2, 2);
        h << 0.5 * hbar, 0.0, 0.0, -0.5 * hbar;
        return h;
    };
    return p;
}

HamiltonianPath three_level_smooth_path(double tau, std::uint64_t seed, double hbar) {
    if (!(tau > 0)) throw std::invalid_argument("three-level path: tau must be > 0");
    // Deterministic Hermitian pair: gapped diagonal plus a moderate random
    // perturbation direction.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a = Matrix::Zero(3, 3), b = Matrix::Zero(3, 3);
    const double diag[3] = {0.0, 1.4, 3.1};
    for (int i = 0; i < 3; ++i) a(i, i) = diag[i];
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const std::complex<double> entry(gauss(rng), i == j ? 0.0 : gauss(rng));
            b(i, j) = 0.35 * entry;
            b(j, i) = std::conj(b(i, j));
        }
    a *= hbar;
    b *= hbar;

    HamiltonianPath p;
    p.dim = 3;
    p.n_params = 1;
    p.tau = tau;
    p.hbar = hbar;
    p.shape = [](double s) {
        Eigen::VectorXd v(1);
        v[0] = quintic::q(s);
        return v;
    };
    p.shape_d1 = [](double s) {
        Eigen::VectorXd v(1);
        v[0] = quintic::q1(s);
        return v;
    };
    p.hamiltonian = [a, b](const Eigen::VectorXd& lam) -> Matrix { return a + lam[0] * b; };
    p.dh_dlambda = [b](const Eigen::VectorXd&, int) -> Matrix { return b; };
    return p;
}

}  // namespace qotto::cd
