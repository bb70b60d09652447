#pragma once

#include "qotto/ermakov.hpp"
#include "qotto/protocol.hpp"

namespace qotto {

/// Boundary data of a friction-free stroke: encodes b(0)=1, b(tau)=b_tau and
/// vanishing first and second derivatives of b at both ends.
struct StaBoundaryConditions {
    double b_tau;  // target scaling factor, > 0
    double tau;    // stroke duration, > 0
};

/// Closed-form quintic scaling trajectory
///   b(t) = 1 + (b_tau - 1) [10 s^3 - 15 s^4 + 6 s^5],  s = t/tau,
/// which satisfies all six boundary conditions exactly and is monotone
/// between 1 and b_tau.
class PolynomialScaling {
public:
    explicit PolynomialScaling(StaBoundaryConditions bc);

    double b(double t) const;
    double bdot(double t) const;
    double bddot(double t) const;

    double duration() const { return bc_.tau; }
    double b_tau() const { return bc_.b_tau; }

private:
    StaBoundaryConditions bc_;
};

PolynomialScaling polynomial_scaling(StaBoundaryConditions bc);

/// omega^2(t) = omega0^2 / b^4 - bddot / b along the given trajectory.
/// Endpoints are exact: omega^2(0) = omega0^2, omega^2(tau) = omega0^2/b_tau^4.
FrequencyProtocol inverse_engineer_frequency(const PolynomialScaling& trajectory, double omega0);

/// Locally counterdiabatic modified trap for a smooth reference ramp,
/// Omega^2(t) = omega^2 - (3/4)(omega_dot/omega)^2 + omega_ddot/(2 omega).
/// Rejects references whose omega^2 is not positive everywhere.
FrequencyProtocol local_cd_frequency(const FrequencyProtocol& reference);

/// Terminal friction diagnostic of an independent Ermakov re-solve.
struct StaVerification {
    double q_star_end;   // Q*(tau)
    double friction;     // |Q*(tau) - 1|
    double b_end;        // b(tau)
    double bdot_end;     // b'(tau)
    bool pass;           // friction <= threshold
    double threshold;
};

StaVerification verify_sta(const FrequencyProtocol& protocol, SolverOptions opts = {},
                           double threshold = 1e-6);

}  // namespace qotto
