#include "qotto/ermakov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qotto/errors.hpp"

namespace qotto {

double SolverOptions::resolve_step(double tau) const {
    if (step && tolerance)
        throw std::invalid_argument("solver options: set either step or tolerance, not both");
    if (step) {
        if (*step <= 0) throw std::invalid_argument("solver options: step must be > 0");
        return std::min(*step, tau);
    }
    if (tolerance) {
        if (!(*tolerance > 0 && *tolerance < 1))
            throw std::invalid_argument("solver options: tolerance must lie in (0, 1)");
        // RK4 is 4th order; scale the default step by tol^(1/4).
        const double h = tau * std::pow(*tolerance, 0.25);
        return std::clamp(h, tau / 1e7, tau / 1e3);
    }
    return tau / 1e4;
}

ScalingSolution::ScalingSolution(FrequencyProtocol protocol, std::vector<double> t,
                                 std::vector<double> b, std::vector<double> bdot,
                                 std::vector<double> bddot)
    : protocol_(std::move(protocol)),
      t_(std::move(t)),
      b_(std::move(b)),
      bdot_(std::move(bdot)),
      bddot_(std::move(bddot)) {
    step_ = t_.size() > 1 ? t_[1] - t_[0] : 0.0;
}

std::size_t ScalingSolution::bracket(double t) const {
    if (t <= t_.front()) return 0;
    if (t >= t_.back()) return t_.size() - 2;
    const auto i = static_cast<std::size_t>((t - t_.front()) / step_);
    return std::min(i, t_.size() - 2);
}

double ScalingSolution::hermite(double t, const std::vector<double>& y,
                                const std::vector<double>& dy) const {
    const std::size_t i = bracket(t);
    const double h = t_[i + 1] - t_[i];
    const double u = std::clamp((t - t_[i]) / h, 0.0, 1.0);
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y[i] + (u3 - 2 * u2 + u) * h * dy[i] +
           (-2 * u3 + 3 * u2) * y[i + 1] + (u3 - u2) * h * dy[i + 1];
}

double ScalingSolution::b_at(double t) const { return hermite(t, b_, bdot_); }
double ScalingSolution::bdot_at(double t) const { return hermite(t, bdot_, bddot_); }

double ScalingSolution::bddot_at(double t) const {
    // Evaluate the right-hand side at the interpolated b; exact at nodes.
    const double b = b_at(t);
    const double w0 = protocol_.omega_initial();
    return w0 * w0 / (b * b * b) - protocol_.omega_sq(t) * b;
}

double ScalingSolution::max_residual() const {
    if (t_.size() < 5) return 0.0;
    const double w0 = protocol_.omega_initial();
    const double h2 = step_ * step_;
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < t_.size(); ++i) {
        const double fd2 = (-b_[i - 2] + 16 * b_[i - 1] - 30 * b_[i] + 16 * b_[i + 1] -
                            b_[i + 2]) /
                           (12.0 * h2);
        const double rhs = w0 * w0 / (b_[i] * b_[i] * b_[i]) -
                           protocol_.omega_sq(t_[i]) * b_[i];
        worst = std::max(worst, std::abs(fd2 - rhs));
    }
    return worst;
}

ScalingSolution solve_ermakov(const FrequencyProtocol& protocol, SolverOptions opts) {
    const double tau = protocol.duration();
    if (!(tau > 0)) throw std::invalid_argument("solve_ermakov: protocol duration must be > 0");
    const double h_req = opts.resolve_step(tau);
    const auto n_steps = static_cast<std::size_t>(std::ceil(tau / h_req - 1e-12));
    const double h = tau / static_cast<double>(n_steps);

    const double w0sq = protocol.omega_initial() * protocol.omega_initial();
    auto accel = [&](double t, double b) {
        return w0sq / (b * b * b) - protocol.omega_sq(t) * b;
    };

    std::vector<double> ts(n_steps + 1), bs(n_steps + 1), vs(n_steps + 1), as(n_steps + 1);
    double b = 1.0, v = 0.0;
    ts[0] = 0.0;
    bs[0] = b;
    vs[0] = v;
    as[0] = accel(0.0, b);

    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = h * static_cast<double>(i);
        const double k1b = v, k1v = accel(t, b);
        const double k2b = v + 0.5 * h * k1v, k2v = accel(t + 0.5 * h, b + 0.5 * h * k1b);
        const double k3b = v + 0.5 * h * k2v, k3v = accel(t + 0.5 * h, b + 0.5 * h * k2b);
        const double k4b = v + h * k3v, k4v = accel(t + h, b + h * k3b);
        b += h * (k1b + 2 * k2b + 2 * k3b + k4b) / 6.0;
        v += h * (k1v + 2 * k2v + 2 * k3v + k4v) / 6.0;
        const double t_next = h * static_cast<double>(i + 1);
        if (!std::isfinite(b) || b < opts.b_min || b > opts.b_max)
            throw SolverDivergence("ermakov solve diverged: b=" + std::to_string(b) +
                                       " at t=" + std::to_string(t_next),
                                   t_next);
        ts[i + 1] = t_next;
        bs[i + 1] = b;
        vs[i + 1] = v;
        as[i + 1] = accel(t_next, b);
    }
    ts.back() = tau;  // exact endpoint
    return ScalingSolution(protocol, std::move(ts), std::move(bs), std::move(vs), std::move(as));
}

std::optional<double> q_star(const ScalingSolution& sol, double t) {
    const double wsq = sol.protocol().omega_sq(t);
    if (wsq <= 0) return std::nullopt;
    const double w0 = sol.protocol().omega_initial();
    const double w = std::sqrt(wsq);
    const double b = sol.b_at(t);
    const double bd = sol.bdot_at(t);
    return (w0 / w) * (1.0 / (2.0 * b * b) + wsq * b * b / (2.0 * w0 * w0) +
                       bd * bd / (2.0 * w0 * w0));
}

double q_star_end(const ScalingSolution& sol) {
    const auto q = q_star(sol, sol.duration());
    if (!q)
        throw std::domain_error("q_star_end: omega^2(tau) <= 0 violates protocol invariants");
    return *q;
}

double q_star_sudden(double omega_a, double omega_b) {
    if (!(omega_a > 0) || !(omega_b > 0))
        throw std::invalid_argument("q_star_sudden: frequencies must be > 0");
    return (omega_a * omega_a + omega_b * omega_b) / (2.0 * omega_a * omega_b);
}

std::optional<AdiabaticReference> adiabatic_reference(const FrequencyProtocol& protocol,
                                                      double t) {
    const double wsq = protocol.omega_sq(t);
    if (wsq <= 0) return std::nullopt;
    const double w = std::sqrt(wsq);
    const double w0 = protocol.omega_initial();
    return AdiabaticReference{std::sqrt(w0 / w), w / w0};
}

InitialMoments InitialMoments::thermal(double energy, double omega0, double mass, double hbar) {
    if (!(energy > 0) || !(omega0 > 0) || !(mass > 0))
        throw std::invalid_argument("thermal moments: energy, omega0, mass must be > 0");
    return InitialMoments{energy, energy / (mass * omega0 * omega0), 0.0, mass, hbar};
}

double nonadiabatic_energy(const ScalingSolution& sol, double t, const InitialMoments& m) {
    if (m.position_second_moment < 0)
        throw std::invalid_argument("moments: position second moment must be >= 0");
    const double b = sol.b_at(t);
    const double bd = sol.bdot_at(t);
    const double bdd = sol.bddot_at(t);
    return m.energy / (b * b) -
           0.5 * m.mass * (b * bdd - bd * bd) * m.position_second_moment +
           0.5 * (bd / b) * m.squeezing_correlator;
}

}  // namespace qotto
