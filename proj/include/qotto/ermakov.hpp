#pragma once

#include <optional>
#include <vector>

#include "qotto/protocol.hpp"

namespace qotto {

/// Fixed-step RK4 configuration.  Exactly one of `step` / `tolerance` may be
/// set; with neither, the step defaults to tau/1e4.  `tolerance` is mapped to
/// a step heuristically (step = tau * tolerance^(1/4), clamped).
struct SolverOptions {
    std::optional<double> step;
    std::optional<double> tolerance;
    double b_min = 1e-6;  // divergence caps on the scaling factor
    double b_max = 1e6;

    double resolve_step(double tau) const;
    static SolverOptions with_step(double h) { return {h, std::nullopt, 1e-6, 1e6}; }
    static SolverOptions with_tolerance(double tol) { return {std::nullopt, tol, 1e-6, 1e6}; }
};

/// Grid solution of b'' + omega^2(t) b = omega0^2 / b^3 with b(0)=1, b'(0)=0.
///
/// bddot is stored from the right-hand side omega0^2/b^3 - omega^2(t) b, so
/// the defining relation holds exactly at grid points; max_residual() gives
/// an independent finite-difference diagnostic instead.
class ScalingSolution {
public:
    ScalingSolution(FrequencyProtocol protocol, std::vector<double> t, std::vector<double> b,
                    std::vector<double> bdot, std::vector<double> bddot);

    const FrequencyProtocol& protocol() const { return protocol_; }
    std::size_t size() const { return t_.size(); }
    double time(std::size_t i) const { return t_[i]; }
    double b(std::size_t i) const { return b_[i]; }
    double bdot(std::size_t i) const { return bdot_[i]; }
    double bddot(std::size_t i) const { return bddot_[i]; }
    double duration() const { return t_.back(); }

    // Cubic Hermite interpolation between grid points.
    double b_at(double t) const;
    double bdot_at(double t) const;
    double bddot_at(double t) const;

    /// Max |b'' + omega^2 b - omega0^2/b^3| over interior grid points with
    /// b'' re-estimated by a 5-point central difference of b (4th order, so
    /// halving the step shrinks this by ~16x).
    double max_residual() const;

private:
    FrequencyProtocol protocol_;
    std::vector<double> t_, b_, bdot_, bddot_;
    double step_;

    std::size_t bracket(double t) const;
    double hermite(double t, const std::vector<double>& y, const std::vector<double>& dy) const;
};

/// Integrates the scaling equation for `protocol` from equilibrium initial
/// conditions.  Throws SolverDivergence when b leaves [b_min, b_max].
ScalingSolution solve_ermakov(const FrequencyProtocol& protocol, SolverOptions opts = {});

/// Nonadiabatic factor Q*(t) >= 1; empty where omega^2(t) <= 0 (the factor
/// presupposes a real trapping frequency).
std::optional<double> q_star(const ScalingSolution& sol, double t);

/// Q* at the end of the stroke, where omega^2 > 0 is guaranteed.
double q_star_end(const ScalingSolution& sol);

/// Sudden-quench factor (w1^2 + w2^2) / (2 w1 w2); symmetric, >= 1.
double q_star_sudden(double omega_a, double omega_b);

struct AdiabaticReference {
    double b_ad;          // sqrt(omega_initial / omega(t))
    double energy_ratio;  // <H(t)>_ad / <H(0)> = 1/b_ad^2
};

/// Adiabatic scaling factor and energy ratio at time t; empty where
/// omega^2(t) <= 0.
std::optional<AdiabaticReference> adiabatic_reference(const FrequencyProtocol& protocol, double t);

/// Initial-state data entering the nonadiabatic mean-energy formula.
struct InitialMoments {
    double energy;                  // <H(0)>
    double position_second_moment;  // sum_i <r_i^2(0)>, >= 0
    double squeezing_correlator;    // sum_i <{r_i, p_i}(0)>; 0 for thermal states
    double mass = 1.0;
    double hbar = 1.0;

    /// Thermal closure sum<r^2> = E0/(m omega0^2) (virial theorem for the
    /// scale-invariant class); squeezing vanishes in equilibrium.
    static InitialMoments thermal(double energy, double omega0, double mass = 1.0,
                                  double hbar = 1.0);
};

/// <H(t)> = E0/b^2 - (m/2)(b b'' - b'^2) sum<r^2(0)> + (b'/2b) sum<{r,p}(0)>.
/// For thermal moments this equals Q*(t) * <H(t)>_ad wherever Q* is defined.
double nonadiabatic_energy(const ScalingSolution& sol, double t, const InitialMoments& moments);

}  // namespace qotto
