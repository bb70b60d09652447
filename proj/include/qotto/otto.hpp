#pragma once

#include <string>

#include "qotto/ermakov.hpp"
#include "qotto/media.hpp"
#include "qotto/protocol.hpp"

namespace qotto {

/// Four-stroke quantum Otto cycle between trap frequencies omega1 (cold, open
/// trap) and omega2 (hot, compressed), omega2 > omega1 > 0, with reservoirs
/// at beta_c > beta_h > 0.  Thermalization strokes are instantaneous state
/// replacements; their durations enter only the cycle time.
struct CycleSpec {
    double omega1;
    double omega2;
    double beta_c;
    double beta_h;
    FrequencyProtocol compression;  // omega1 -> omega2, duration tau_ab
    FrequencyProtocol expansion;    // omega2 -> omega1, duration tau_cd
    double tau_bc = 0.0;            // hot isochore duration
    double tau_da = 0.0;            // cold isochore duration
    MediumSpec medium = MediumSpec::single_oscillator();
    SolverOptions solver = {};

    void validate() const;  // throws std::invalid_argument with the field named
};

/// Sign conventions: work positive when done ON the medium, heat positive
/// when absorbed by the medium, so W1 + W3 + Q2 + Q4 telescopes to zero and
/// the efficiency -(W1+W3)/Q2 is positive in the engine regime.
struct CycleReport {
    // Corner mean energies.
    double energy_a, energy_b, energy_c, energy_d;
    // Stroke energetics.
    double w1, w3, q2, q4;
    double qstar_ab, qstar_cd;
    // Performance.
    double eta;    // -(W1+W3)/Q2
    double power;  // -(W1+W3)/tau_cycle
    double tau_cycle;
    // Reference efficiencies and bounds.
    double eta_otto;         // 1 - omega1/omega2
    double eta_carnot;       // 1 - beta_h/beta_c
    double eta_ca;           // 1 - sqrt(1 - eta_carnot)
    double eta_sudden;       // finite-time efficiency with both Q* at the sudden value
    double eta_nonad_bound;  // 1 - Q*_CD omega1/omega2
    double qstar_sudden;
    // Engine diagnostics (never exceptions: a valid cycle may fail to be an engine).
    bool engine_condition;   // Q2 > 0 and -(W1+W3) > 0
    std::string diagnostic;  // empty when engine_condition holds
    // Protocol monotonicity, recorded for the bound checks.
    bool compression_monotonic;
    bool expansion_monotonic;
};

CycleReport run_cycle(const CycleSpec& spec);

/// Checks of the finite-time bounds; failures are reported outcomes, never
/// exceptions.  The Q* <= Q*_sq comparisons apply to monotonic strokes only
/// and are reported as passed (vacuously) otherwise.
struct BoundsReport {
    bool eta_above_sudden;    // eta >= eta_sudden - eps
    bool eta_below_otto;      // eta <= eta_otto + eps
    bool eta_below_nonad;     // eta <= eta_nonad_bound + eps
    bool qstar_ab_below_sq;   // Q*_AB <= Q*_sq + eps (monotonic compression)
    bool qstar_cd_below_sq;   // Q*_CD <= Q*_sq + eps (monotonic expansion)
    bool first_law;           // |W1+W3+Q2+Q4| at the floating-point floor
    double first_law_residual;
    double eps;

    bool all() const {
        return eta_above_sudden && eta_below_otto && eta_below_nonad && qstar_ab_below_sq &&
               qstar_cd_below_sq && first_law;
    }
};

BoundsReport bounds_report(const CycleReport& report, double eps = 1e-9);

/// Performance of one N-particle engine against N independent single-particle
/// engines with identical protocols, temperatures and cycle time.
struct SupremacyRatios {
    double power_ratio;       // P(N, lambda) / (N * P(1, lambda))
    double efficiency_ratio;  // eta(N, lambda) / eta(1, lambda)
    CycleReport many;
    CycleReport single;
};

SupremacyRatios supremacy_ratios(const CycleSpec& spec);

}  // namespace qotto
