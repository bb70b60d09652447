#include "qotto/media.hpp"

#include <cmath>
#include <vector>

namespace qotto {

MediumSpec MediumSpec::single_oscillator(double mass, double hbar) {
    if (!(mass > 0) || !(hbar > 0))
        throw std::invalid_argument("medium: mass and hbar must be > 0");
    return MediumSpec{Kind::SingleOscillator, 1, 0.0, mass, hbar};
}

MediumSpec MediumSpec::calogero_sutherland(int n, double lambda, double mass, double hbar) {
    if (n < 1) throw std::invalid_argument("medium: particle count must be >= 1");
    if (lambda < 0) throw std::invalid_argument("medium: lambda must be >= 0");
    if (!(mass > 0) || !(hbar > 0))
        throw std::invalid_argument("medium: mass and hbar must be > 0");
    return MediumSpec{Kind::CalogeroSutherland, n, lambda, mass, hbar};
}

namespace {

// Mean energy of one harmonic mode, (hw/2) coth(b hw / 2), with asymptotic
// branches guarding the coth evaluation at the extremes.
double oscillator_energy(double beta, double hw) {
    const double x = beta * hw;
    if (x > 40.0) return 0.5 * hw;                          // ground state
    if (x < 1e-6) return 1.0 / beta + beta * hw * hw / 12;  // equipartition + first correction
    return 0.5 * hw / std::tanh(0.5 * x);
}

struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

double thermal_energy(const ThermalState& state) {
    if (!(state.beta > 0) || !(state.omega > 0))
        throw std::invalid_argument("thermal state: beta and omega must be > 0");
    const double hw = state.medium.hbar * state.omega;
    if (state.medium.kind == MediumSpec::Kind::SingleOscillator || state.medium.n == 1)
        return oscillator_energy(state.beta, hw);
    return cs_partition_function(state.medium.n, state.medium.lambda, state.beta, state.omega,
                                 state.medium.hbar)
        .energy;
}

PartitionResult cs_partition_function(int n, double lambda, double beta, double omega,
                                      double hbar) {
    if (n < 1) throw std::invalid_argument("cs partition: n must be >= 1");
    if (!(beta > 0) || !(omega > 0))
        throw std::invalid_argument("cs partition: beta and omega must be > 0");
    const double hw = hbar * omega;

    // Work with Y_N = Z_N * exp(N beta hw / 2) so nothing underflows:
    //   Y_N = (1/N) sum_k u_k Y_{N-k},   u_k = 1 / (1 - e^{-k beta hw}).
    // dY/dbeta propagates through the same recursion (analytic, no numeric
    // differencing).
    std::vector<double> y(n + 1, 0.0), dy(n + 1, 0.0);
    y[0] = 1.0;
    for (int m = 1; m <= n; ++m) {
        KahanSum sy, sdy;
        for (int k = 1; k <= m; ++k) {
            const double x = static_cast<double>(k) * beta * hw;
            const double em = std::exp(-x);
            const double u = 1.0 / -std::expm1(-x);   // 1/(1-e^-x)
            const double du = -static_cast<double>(k) * hw * em * u * u;
            sy.add(u * y[m - k]);
            sdy.add(u * dy[m - k] + du * y[m - k]);
        }
        y[m] = sy.value() / m;
        dy[m] = sdy.value() / m;
    }

    const double shift = hw * lambda * static_cast<double>(n) * (n - 1) / 2.0;
    const double log_z = -0.5 * n * beta * hw + std::log(y[n]) - beta * shift;
    const double energy = 0.5 * n * hw - dy[n] / y[n] + shift;
    return PartitionResult{std::exp(log_z), log_z, energy};
}

double cs_oracle(int n, double lambda, double beta, double omega, int n_max, double hbar) {
    if (n < 1 || n > 6) throw std::invalid_argument("cs_oracle: intended for 1 <= n <= 6");
    if (n_max < 1) throw std::invalid_argument("cs_oracle: n_max must be >= 1");
    if (!(beta > 0) || !(omega > 0))
        throw std::invalid_argument("cs_oracle: beta and omega must be > 0");
    const double hw = hbar * omega;
    const double e0 = hw * (0.5 * n + lambda * n * (n - 1) / 2.0);

    // Boltzmann factors of the possible level sums, tabulated once.
    std::vector<double> boltz(static_cast<std::size_t>(n) * n_max + 1);
    for (std::size_t s = 0; s < boltz.size(); ++s)
        boltz[s] = std::exp(-beta * hw * static_cast<double>(s));

    KahanSum z, ez, z_edge;
    // Non-decreasing occupation tuples n_1 <= ... <= n_N <= n_max.
    auto visit = [&](auto&& self, int idx, int min_level, int sum) -> void {
        if (idx == n) {
            const double w = boltz[sum];
            z.add(w);
            ez.add(w * (e0 + hw * sum));
            if (min_level == n_max) z_edge.add(w);  // last particle sat at the cap
            return;
        }
        for (int level = min_level; level <= n_max; ++level)
            self(self, idx + 1, level, sum + level);
    };
    visit(visit, 0, 0, 0);

    // Geometric continuation estimate of the un-enumerated tail.
    const double r = std::exp(-beta * hw);
    const double tail = z_edge.value() * r / (1.0 - r) * n;
    if (tail > 1e-14 * z.value())
        throw std::runtime_error("cs_oracle: truncation insufficient, raise n_max");
    return ez.value() / z.value();
}

}  // namespace qotto
