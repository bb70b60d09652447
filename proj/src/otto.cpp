#include "qotto/otto.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qotto {

namespace {

void check(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Q* at the end of a stroke.  Sudden protocols of zero duration have no ODE
// to solve; their factor is the closed-form sudden value (which the Ermakov
// route reproduces for any positive hold time).
double stroke_qstar(const FrequencyProtocol& p, const SolverOptions& opts) {
    if (p.kind() == FrequencyProtocol::Kind::SuddenQuench && p.duration() == 0.0)
        return q_star_sudden(p.omega_initial(), p.omega_final());
    return q_star_end(solve_ermakov(p, opts));
}

double finite_time_efficiency(double qstar_ab, double qstar_cd, double omega1, double omega2,
                              double energy_a, double energy_c) {
    const double num = qstar_cd * energy_c - (omega2 / omega1) * energy_a;
    const double den = energy_c - qstar_ab * (omega2 / omega1) * energy_a;
    return 1.0 - (omega1 / omega2) * (num / den);
}

}  // namespace

void CycleSpec::validate() const {
    check(omega1 > 0, "cycle: omega1 must be > 0");
    check(omega2 > omega1, "cycle: omega2 must exceed omega1");
    check(beta_h > 0, "cycle: beta_h must be > 0");
    check(beta_c > beta_h, "cycle: beta_c must exceed beta_h");
    check(tau_bc >= 0 && tau_da >= 0, "cycle: isochore durations must be >= 0");

    auto endpoints_match = [](const FrequencyProtocol& p, double w_start, double w_end) {
        const double rtol = 1e-9;
        return std::abs(p.omega_initial() - w_start) <= rtol * w_start &&
               std::abs(p.omega_final() - w_end) <= rtol * w_end;
    };
    check(endpoints_match(compression, omega1, omega2),
          "cycle: compression protocol endpoints must run omega1 -> omega2");
    check(endpoints_match(expansion, omega2, omega1),
          "cycle: expansion protocol endpoints must run omega2 -> omega1");
    const double tau_c = compression.duration() + tau_bc + expansion.duration() + tau_da;
    check(tau_c > 0, "cycle: total cycle time must be > 0");
}

CycleReport run_cycle(const CycleSpec& spec) {
    spec.validate();

    CycleReport r{};
    r.energy_a = thermal_energy({spec.beta_c, spec.omega1, spec.medium});
    r.energy_c = thermal_energy({spec.beta_h, spec.omega2, spec.medium});

    r.qstar_ab = stroke_qstar(spec.compression, spec.solver);
    r.qstar_cd = stroke_qstar(spec.expansion, spec.solver);

    const double ratio_up = spec.omega2 / spec.omega1;
    const double ratio_down = spec.omega1 / spec.omega2;
    r.energy_b = r.qstar_ab * ratio_up * r.energy_a;
    r.energy_d = r.qstar_cd * ratio_down * r.energy_c;

    r.w1 = r.energy_b - r.energy_a;
    r.w3 = r.energy_d - r.energy_c;
    r.q2 = r.energy_c - r.energy_b;
    r.q4 = r.energy_a - r.energy_d;

    r.eta = -(r.w1 + r.w3) / r.q2;
    r.tau_cycle = spec.compression.duration() + spec.tau_bc + spec.expansion.duration() +
                  spec.tau_da;
    r.power = -(r.w1 + r.w3) / r.tau_cycle;

    r.eta_otto = 1.0 - ratio_down;
    r.eta_carnot = 1.0 - spec.beta_h / spec.beta_c;
    r.eta_ca = 1.0 - std::sqrt(spec.beta_h / spec.beta_c);
    r.qstar_sudden = q_star_sudden(spec.omega1, spec.omega2);
    r.eta_sudden = finite_time_efficiency(r.qstar_sudden, r.qstar_sudden, spec.omega1,
                                          spec.omega2, r.energy_a, r.energy_c);
    r.eta_nonad_bound = 1.0 - r.qstar_cd * ratio_down;

    r.engine_condition = r.q2 > 0 && -(r.w1 + r.w3) > 0;
    if (!r.engine_condition) {
        r.diagnostic = r.q2 <= 0 ? "no heat absorbed from the hot reservoir (Q2 <= 0)"
                                 : "net work output is not positive";
    }

    r.compression_monotonic = spec.compression.monotonic_omega_sq();
    r.expansion_monotonic = spec.expansion.monotonic_omega_sq();
    return r;
}

BoundsReport bounds_report(const CycleReport& r, double eps) {
    BoundsReport b{};
    b.eps = eps;
    b.eta_above_sudden = r.eta >= r.eta_sudden - eps;
    b.eta_below_otto = r.eta <= r.eta_otto + eps;
    b.eta_below_nonad = r.eta <= r.eta_nonad_bound + eps;
    b.qstar_ab_below_sq = !r.compression_monotonic || r.qstar_ab <= r.qstar_sudden + eps;
    b.qstar_cd_below_sq = !r.expansion_monotonic || r.qstar_cd <= r.qstar_sudden + eps;
    b.first_law_residual = std::abs(r.w1 + r.w3 + r.q2 + r.q4);
    const double scale = std::abs(r.energy_a) + std::abs(r.energy_b) + std::abs(r.energy_c) +
                         std::abs(r.energy_d);
    b.first_law = b.first_law_residual <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
    return b;
}

SupremacyRatios supremacy_ratios(const CycleSpec& spec) {
    check(spec.medium.kind == MediumSpec::Kind::CalogeroSutherland,
          "supremacy: medium must be Calogero-Sutherland");
    check(spec.medium.n >= 1, "supremacy: particle count must be >= 1");

    CycleSpec single = spec;
    single.medium = MediumSpec::calogero_sutherland(1, spec.medium.lambda, spec.medium.mass,
                                                    spec.medium.hbar);
    SupremacyRatios out{0.0, 0.0, run_cycle(spec), run_cycle(single)};
    out.power_ratio = out.many.power / (static_cast<double>(spec.medium.n) * out.single.power);
    out.efficiency_ratio = out.many.eta / out.single.eta;
    return out;
}

}  // namespace qotto
