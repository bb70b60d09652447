#pragma once

#include <vector>

#include "qotto/cd/path.hpp"

namespace qotto::cd {

struct SpectralOptions {
    /// Adjacent levels closer than this fraction of ||H|| raise DegeneracyError.
    double degeneracy_rel_gap = 1e-8;
};

/// Instantaneous eigensystem with a continuous gauge: eigenvalues ascending,
/// eigenvector columns normalized with <n(t_prev)|n(t)> real and positive
/// along a chained grid.  At the first frame the phase is fixed by making the
/// largest-magnitude component of each vector real positive.
struct SpectralFrame {
    double t = 0.0;
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;  // columns |n(t)>

    Matrix projector(int n) const {
        return eigenvectors.col(n) * eigenvectors.col(n).adjoint();
    }
    double spectral_norm() const;
    double min_gap() const;
};

/// Eigendecomposition of a single Hermitian matrix with the t=0 gauge rule.
SpectralFrame spectral_frame(const Matrix& h, double t, const SpectralOptions& opts = {});

/// Like spectral_frame, but phases chained to `prev` by overlap positivity.
SpectralFrame spectral_frame_chained(const Matrix& h, double t, const SpectralFrame& prev,
                                     const SpectralOptions& opts = {});

/// Frames along the given time grid with gauge chaining from the first point.
std::vector<SpectralFrame> spectral_path(const HamiltonianPath& path,
                                         const std::vector<double>& grid,
                                         const SpectralOptions& opts = {});

std::vector<double> uniform_grid(double t0, double t1, int points);

}  // namespace qotto::cd
