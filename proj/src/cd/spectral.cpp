#include "qotto/cd/spectral.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "qotto/errors.hpp"

namespace qotto::cd {

double SpectralFrame::spectral_norm() const {
    return std::max(std::abs(eigenvalues[0]), std::abs(eigenvalues[eigenvalues.size() - 1]));
}

double SpectralFrame::min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i + 1 < eigenvalues.size(); ++i)
        g = std::min(g, eigenvalues[i + 1] - eigenvalues[i]);
    return g;
}

namespace {

void check_hermitian(const Matrix& h, double t) {
    const double scale = std::max(1.0, h.norm());
    if ((h - h.adjoint()).norm() > 1e-12 * scale)
        throw std::invalid_argument("spectral: matrix is not Hermitian at t=" +
                                    std::to_string(t));
}

void check_gaps(const SpectralFrame& f, const SpectralOptions& opts) {
    const double floor = opts.degeneracy_rel_gap * std::max(f.spectral_norm(), 1e-300);
    for (Eigen::Index i = 0; i + 1 < f.eigenvalues.size(); ++i) {
        const double gap = f.eigenvalues[i + 1] - f.eigenvalues[i];
        if (gap < floor)
            throw DegeneracyError("spectral: levels " + std::to_string(i) + " and " +
                                      std::to_string(i + 1) + " degenerate at t=" +
                                      std::to_string(f.t) + " (gap " + std::to_string(gap) +
                                      ")",
                                  f.t, static_cast<int>(i));
    }
}

SpectralFrame decompose(const Matrix& h, double t) {
    check_hermitian(h, t);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectral: eigensolver failed at t=" + std::to_string(t));
    SpectralFrame f;
    f.t = t;
    f.eigenvalues = es.eigenvalues();
    f.eigenvectors = es.eigenvectors();
    return f;
}

}  // namespace

SpectralFrame spectral_frame(const Matrix& h, double t, const SpectralOptions& opts) {
    SpectralFrame f = decompose(h, t);
    check_gaps(f, opts);
    // Fix each phase by the largest-magnitude component.
    for (Eigen::Index n = 0; n < f.eigenvectors.cols(); ++n) {
        Eigen::Index imax = 0;
        f.eigenvectors.col(n).cwiseAbs().maxCoeff(&imax);
        const std::complex<double> a = f.eigenvectors(imax, n);
        if (std::abs(a) > 0) f.eigenvectors.col(n) *= std::conj(a) / std::abs(a);
    }
    return f;
}

SpectralFrame spectral_frame_chained(const Matrix& h, double t, const SpectralFrame& prev,
                                     const SpectralOptions& opts) {
    SpectralFrame f = decompose(h, t);
    check_gaps(f, opts);
    for (Eigen::Index n = 0; n < f.eigenvectors.cols(); ++n) {
        const std::complex<double> ovl =
            prev.eigenvectors.col(n).adjoint() * f.eigenvectors.col(n);
        if (std::abs(ovl) < 1e-8)
            throw std::runtime_error(
                "spectral: eigenvector overlap collapsed between frames at t=" +
                std::to_string(t) + "; refine the grid");
        f.eigenvectors.col(n) *= std::conj(ovl) / std::abs(ovl);
    }
    return f;
}

std::vector<SpectralFrame> spectral_path(const HamiltonianPath& path,
                                         const std::vector<double>& grid,
                                         const SpectralOptions& opts) {
    if (grid.empty()) throw std::invalid_argument("spectral_path: empty grid");
    std::vector<SpectralFrame> frames;
    frames.reserve(grid.size());
    frames.push_back(spectral_frame(path.h_at(grid[0]), grid[0], opts));
    for (std::size_t i = 1; i < grid.size(); ++i)
        frames.push_back(
            spectral_frame_chained(path.h_at(grid[i]), grid[i], frames.back(), opts));
    return frames;
}

std::vector<double> uniform_grid(double t0, double t1, int points) {
    if (points < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = t0 + (t1 - t0) * static_cast<double>(i) / (points - 1);
    g.back() = t1;
    return g;
}

}  // namespace qotto::cd
