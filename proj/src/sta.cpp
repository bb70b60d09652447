#include "qotto/sta.hpp"

#include <cmath>
#include <stdexcept>

namespace qotto {

PolynomialScaling::PolynomialScaling(StaBoundaryConditions bc) : bc_(bc) {
    if (!(bc.b_tau > 0)) throw std::invalid_argument("sta: b_tau must be > 0");
    if (!(bc.tau > 0)) throw std::invalid_argument("sta: tau must be > 0");
    // The quintic blend is monotone (q'(s) = 30 s^2 (1-s)^2 >= 0), so b stays
    // between 1 and b_tau and never crosses zero.  Checked numerically so a
    // future change of ansatz cannot silently break the guarantee.
    double prev = b(0.0);
    const double dir = bc.b_tau >= 1.0 ? 1.0 : -1.0;
    for (int i = 1; i <= 256; ++i) {
        const double cur = b(bc.tau * i / 256.0);
        if (dir * (cur - prev) < -1e-12 * std::abs(bc.b_tau - 1.0))
            throw std::logic_error("sta: scaling trajectory is not monotone");
        if (cur <= 0) throw std::logic_error("sta: scaling trajectory crossed zero");
        prev = cur;
    }
}

double PolynomialScaling::b(double t) const {
    const double s = t / bc_.tau;
    return 1.0 + (bc_.b_tau - 1.0) * quintic::q(s);
}

double PolynomialScaling::bdot(double t) const {
    const double s = t / bc_.tau;
    return (bc_.b_tau - 1.0) * quintic::q1(s) / bc_.tau;
}

double PolynomialScaling::bddot(double t) const {
    const double s = t / bc_.tau;
    return (bc_.b_tau - 1.0) * quintic::q2(s) / (bc_.tau * bc_.tau);
}

PolynomialScaling polynomial_scaling(StaBoundaryConditions bc) { return PolynomialScaling(bc); }

FrequencyProtocol inverse_engineer_frequency(const PolynomialScaling& trajectory,
                                             double omega0) {
    if (!(omega0 > 0)) throw std::invalid_argument("sta: omega0 must be > 0");
    // The closed-form protocol reproduces omega^2 = omega0^2/b^4 - bddot/b for
    // the same quintic b(t), so endpoint identities hold symbolically.
    return FrequencyProtocol::polynomial_sta(omega0, trajectory.b_tau(),
                                             trajectory.duration());
}

FrequencyProtocol local_cd_frequency(const FrequencyProtocol& reference) {
    return FrequencyProtocol::local_cd(reference);
}

StaVerification verify_sta(const FrequencyProtocol& protocol, SolverOptions opts,
                           double threshold) {
    const ScalingSolution sol = solve_ermakov(protocol, opts);
    const double q = q_star_end(sol);
    const double friction = std::abs(q - 1.0);
    return StaVerification{q, friction, sol.b(sol.size() - 1), sol.bdot(sol.size() - 1),
                           friction <= threshold, threshold};
}

}  // namespace qotto
