#include "qotto/cd/work.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qotto::cd {

namespace {

void check_occupations(const Eigen::VectorXd& p0, int dim) {
    if (p0.size() != dim)
        throw std::invalid_argument("work: occupations size must match dimension");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p0.size(); ++i) {
        if (p0[i] < -1e-12) throw std::invalid_argument("work: negative occupation");
        sum += p0[i];
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("work: occupations must sum to 1");
}

void sort_support(WorkDistribution& d) {
    std::vector<std::size_t> idx(d.w.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return d.w[a] < d.w[b]; });
    std::vector<double> w(d.w.size()), p(d.p.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        w[i] = d.w[idx[i]];
        p[i] = d.p[idx[i]];
    }
    d.w = std::move(w);
    d.p = std::move(p);
}

WorkDistribution cd_distribution(const HamiltonianPath& path, const Eigen::VectorXd& p0,
                                 double t, const Matrix& u, const SpectralOptions& opts) {
    const SpectralFrame basis0 = spectral_frame(h_cd(path, 0.0, opts), 0.0, opts);
    const SpectralFrame basis1 = spectral_frame(h_cd(path, t, opts), t, opts);
    const Matrix amplitudes = basis1.eigenvectors.adjoint() * u * basis0.eigenvectors;

    WorkDistribution d;
    d.time1 = t;
    d.initial_occupations = p0;
    const int dim = path.dim;
    d.w.reserve(dim * dim);
    d.p.reserve(dim * dim);
    for (int n = 0; n < dim; ++n)
        for (int k = 0; k < dim; ++k) {
            d.w.push_back(basis1.eigenvalues[k] - basis0.eigenvalues[n]);
            d.p.push_back(p0[n] * std::norm(amplitudes(k, n)));
        }
    sort_support(d);
    return d;
}

}  // namespace

double WorkDistribution::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) m += w[i] * p[i];
    return m;
}

double WorkDistribution::variance() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) v += (w[i] - m) * (w[i] - m) * p[i];
    return v;
}

double WorkDistribution::total() const {
    double s = 0.0;
    for (double pi : p) s += pi;
    return s;
}

WorkDistribution WorkDistribution::merged(double w_tol) const {
    WorkDistribution out;
    out.time0 = time0;
    out.time1 = time1;
    out.initial_occupations = initial_occupations;
    for (std::size_t i = 0; i < w.size();) {
        double mass = 0.0, centroid = 0.0;
        std::size_t j = i;
        while (j < w.size() && w[j] - w[i] <= w_tol) {
            mass += p[j];
            centroid += p[j] * w[j];
            ++j;
        }
        out.w.push_back(mass > 0 ? centroid / mass : w[i]);
        out.p.push_back(mass);
        i = j;
    }
    return out;
}

WorkDistribution work_distribution(const HamiltonianPath& path, const Eigen::VectorXd& p0,
                                   double t, WorkMode mode, int steps,
                                   const SpectralOptions& opts) {
    check_occupations(p0, path.dim);
    if (t < 0 || t > path.tau + 1e-12 * path.tau)
        throw std::invalid_argument("work: time outside [0, tau]");

    if (mode == WorkMode::Adiabatic) {
        // p_{n->k} = delta_{kn}; the support uses the bare spectrum of H.
        const SpectralFrame f0 = spectral_frame(path.h_at(0.0), 0.0, opts);
        const SpectralFrame f1 = spectral_frame(path.h_at(t), t, opts);
        WorkDistribution d;
        d.time1 = t;
        d.initial_occupations = p0;
        for (int n = 0; n < path.dim; ++n) {
            d.w.push_back(f1.eigenvalues[n] - f0.eigenvalues[n]);
            d.p.push_back(p0[n]);
        }
        sort_support(d);
        return d;
    }

    if (t == 0.0)
        return cd_distribution(path, p0, 0.0, Matrix::Identity(path.dim, path.dim), opts);
    const auto generator = [&](double s) { return h_cd(path, s, opts); };
    const UnitaryTrajectory traj = evolve_unitary(generator, path.dim, t, steps, path.hbar);
    return cd_distribution(path, p0, t, traj.final_unitary(), opts);
}

WorkDistribution work_distribution_at(const HamiltonianPath& path, const Eigen::VectorXd& p0,
                                      const UnitaryTrajectory& traj, double t,
                                      const SpectralOptions& opts) {
    check_occupations(p0, path.dim);
    return cd_distribution(path, p0, t, traj.at_time(t), opts);
}

double linf_distance(const WorkDistribution& a, const WorkDistribution& b, double w_tol) {
    struct Entry {
        double w, p;
        int src;
    };
    std::vector<Entry> all;
    all.reserve(a.w.size() + b.w.size());
    for (std::size_t i = 0; i < a.w.size(); ++i) all.push_back({a.w[i], a.p[i], 0});
    for (std::size_t i = 0; i < b.w.size(); ++i) all.push_back({b.w[i], b.p[i], 1});
    std::sort(all.begin(), all.end(), [](const Entry& x, const Entry& y) { return x.w < y.w; });

    double worst = 0.0;
    for (std::size_t i = 0; i < all.size();) {
        double mass[2] = {0.0, 0.0};
        std::size_t j = i;
        while (j < all.size() && all[j].w - all[i].w <= w_tol) {
            mass[all[j].src] += all[j].p;
            ++j;
        }
        worst = std::max(worst, std::abs(mass[0] - mass[1]));
        i = j;
    }
    return worst;
}

}  // namespace qotto::cd
