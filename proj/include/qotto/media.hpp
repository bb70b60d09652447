#pragma once

#include <stdexcept>

namespace qotto {

/// Working-medium descriptor.  A single harmonic oscillator is identical to
/// the one-particle Calogero-Sutherland gas for every thermodynamic output.
struct MediumSpec {
    enum class Kind { SingleOscillator, CalogeroSutherland };

    Kind kind = Kind::SingleOscillator;
    int n = 1;              // particle count, >= 1
    double lambda = 0.0;    // inverse-square interaction strength, >= 0
    double mass = 1.0;
    double hbar = 1.0;

    static MediumSpec single_oscillator(double mass = 1.0, double hbar = 1.0);
    static MediumSpec calogero_sutherland(int n, double lambda, double mass = 1.0,
                                          double hbar = 1.0);
};

/// Canonical Gibbs state of the medium in a trap of frequency omega.
struct ThermalState {
    double beta;   // inverse temperature, > 0
    double omega;  // trap frequency, > 0
    MediumSpec medium;
};

/// Canonical mean energy of the state.
///   SingleOscillator:     (hbar w / 2) coth(beta hbar w / 2)
///   CalogeroSutherland:   E_Bose(N) + hbar w lambda N(N-1)/2
/// The trapped rational Calogero-Sutherland spectrum is the bosonic spectrum
/// rigidly shifted by hbar w lambda N(N-1)/2, so the interacting gas inherits
/// the ideal-Bose canonical recursion.
double thermal_energy(const ThermalState& state);

struct PartitionResult {
    double z;       // canonical partition function (may underflow to 0)
    double log_z;   // computed in scaled form, safe for large beta*N
    double energy;  // -d(ln Z)/d(beta), by analytic differentiation
};

/// Canonical recursion Z_N = (1/N) sum_{k=1..N} z(k beta) Z_{N-k} for ideal
/// bosons in a 1D trap, with the lambda shift applied on top.
PartitionResult cs_partition_function(int n, double lambda, double beta, double omega,
                                      double hbar = 1.0);

/// Brute-force canonical average over all bosonic occupation configurations
/// of the shifted spectrum, for small N.  Throws std::runtime_error when the
/// Boltzmann tail at the truncation exceeds ~1e-14 relative.
double cs_oracle(int n, double lambda, double beta, double omega, int n_max,
                 double hbar = 1.0);

}  // namespace qotto
