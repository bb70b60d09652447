#include "qotto/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qotto/errors.hpp"

namespace qotto {

namespace quintic {
double q(double s) { return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)); }
double q1(double s) { return s * s * (30.0 + s * (-60.0 + 30.0 * s)); }
double q2(double s) { return s * (60.0 + s * (-180.0 + 120.0 * s)); }
double q3(double s) { return 60.0 + s * (-360.0 + 360.0 * s); }
double q4(double s) { return -360.0 + 720.0 * s; }
}  // namespace quintic

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// b(t) and time derivatives for the quintic scaling ansatz.
struct StaPoly {
    double b_tau, tau;
    double b(double s) const { return 1.0 + (b_tau - 1.0) * quintic::q(s); }
    double b1(double s) const { return (b_tau - 1.0) * quintic::q1(s) / tau; }
    double b2(double s) const { return (b_tau - 1.0) * quintic::q2(s) / (tau * tau); }
    double b3(double s) const { return (b_tau - 1.0) * quintic::q3(s) / (tau * tau * tau); }
    double b4(double s) const { return (b_tau - 1.0) * quintic::q4(s) / (tau * tau * tau * tau); }
};

}  // namespace

FrequencyProtocol FrequencyProtocol::constant(double omega0, double tau) {
    require(omega0 > 0, "constant protocol: omega0 must be > 0");
    require(tau > 0, "constant protocol: tau must be > 0");
    FrequencyProtocol p;
    p.kind_ = Kind::Constant;
    p.tau_ = tau;
    p.omega0_ = omega0;
    p.omega_f_ = omega0;
    return p;
}

FrequencyProtocol FrequencyProtocol::linear_ramp(double omega0, double omega_f, double tau) {
    require(omega0 > 0 && omega_f > 0, "linear ramp: endpoint frequencies must be > 0");
    require(tau > 0, "linear ramp: tau must be > 0");
    FrequencyProtocol p;
    p.kind_ = Kind::LinearRamp;
    p.tau_ = tau;
    p.omega0_ = omega0;
    p.omega_f_ = omega_f;
    return p;
}

FrequencyProtocol FrequencyProtocol::smooth_ramp(double omega0, double omega_f, double tau) {
    require(omega0 > 0 && omega_f > 0, "smooth ramp: endpoint frequencies must be > 0");
    require(tau > 0, "smooth ramp: tau must be > 0");
    FrequencyProtocol p;
    p.kind_ = Kind::SmoothRamp;
    p.tau_ = tau;
    p.omega0_ = omega0;
    p.omega_f_ = omega_f;
    return p;
}

FrequencyProtocol FrequencyProtocol::polynomial_sta(double omega0, double b_tau, double tau) {
    require(omega0 > 0, "sta protocol: omega0 must be > 0");
    require(b_tau > 0, "sta protocol: b_tau must be > 0");
    require(tau > 0, "sta protocol: tau must be > 0");
    FrequencyProtocol p;
    p.kind_ = Kind::PolynomialSta;
    p.tau_ = tau;
    p.omega0_ = omega0;
    p.b_tau_ = b_tau;
    p.omega_f_ = omega0 / (b_tau * b_tau);  // omega^2(tau) = omega0^2/b_tau^4
    return p;
}

FrequencyProtocol FrequencyProtocol::sudden_quench(double omega0, double omega_post, double tau) {
    require(omega0 > 0 && omega_post > 0, "sudden quench: frequencies must be > 0");
    require(tau >= 0, "sudden quench: tau must be >= 0");
    FrequencyProtocol p;
    p.kind_ = Kind::SuddenQuench;
    p.tau_ = tau;
    p.omega0_ = omega0;
    p.omega_f_ = omega_post;
    return p;
}

FrequencyProtocol FrequencyProtocol::sampled(std::vector<double> omega_sq_values, double tau) {
    require(omega_sq_values.size() >= 2, "sampled protocol: need at least 2 samples");
    require(tau > 0, "sampled protocol: tau must be > 0");
    require(omega_sq_values.front() > 0 && omega_sq_values.back() > 0,
            "sampled protocol: endpoint omega^2 must be > 0");
    FrequencyProtocol p;
    p.kind_ = Kind::Sampled;
    p.tau_ = tau;
    p.samples_ = std::move(omega_sq_values);
    p.omega0_ = std::sqrt(p.samples_.front());
    p.omega_f_ = std::sqrt(p.samples_.back());
    return p;
}

FrequencyProtocol FrequencyProtocol::local_cd(FrequencyProtocol reference) {
    require(reference.duration() > 0, "local-cd: reference must have tau > 0");
    if (reference.min_omega_sq() <= 0)
        throw std::invalid_argument(
            "local-cd: reference omega^2(t) must stay positive on [0, tau]");
    FrequencyProtocol p;
    p.kind_ = Kind::LocalCd;
    p.tau_ = reference.duration();
    p.reference_ = std::make_shared<const FrequencyProtocol>(std::move(reference));
    // Endpoint frequencies of the modified trap.
    p.omega0_ = std::sqrt(p.local_cd_value(0.0));
    p.omega_f_ = std::sqrt(p.local_cd_value(p.tau_));
    return p;
}

double FrequencyProtocol::omega_sq(double t) const {
    const double s = (tau_ > 0) ? std::clamp(t / tau_, 0.0, 1.0) : 0.0;
    switch (kind_) {
        case Kind::Constant:
            return omega0_ * omega0_;
        case Kind::LinearRamp:
            return omega0_ * omega0_ + (omega_f_ * omega_f_ - omega0_ * omega0_) * s;
        case Kind::SmoothRamp:
            return omega0_ * omega0_ +
                   (omega_f_ * omega_f_ - omega0_ * omega0_) * quintic::q(s);
        case Kind::PolynomialSta: {
            const StaPoly sp{b_tau_, tau_};
            const double b = sp.b(s);
            return omega0_ * omega0_ / (b * b * b * b) - sp.b2(s) / b;
        }
        case Kind::SuddenQuench:
            return omega_f_ * omega_f_;
        case Kind::Sampled:
            return sampled_value(t);
        case Kind::LocalCd:
            return local_cd_value(t);
    }
    return 0.0;
}

double FrequencyProtocol::omega_sq_d1(double t) const {
    const double s = (tau_ > 0) ? std::clamp(t / tau_, 0.0, 1.0) : 0.0;
    switch (kind_) {
        case Kind::Constant:
        case Kind::SuddenQuench:
            return 0.0;
        case Kind::LinearRamp:
            return (omega_f_ * omega_f_ - omega0_ * omega0_) / tau_;
        case Kind::SmoothRamp:
            return (omega_f_ * omega_f_ - omega0_ * omega0_) * quintic::q1(s) / tau_;
        case Kind::PolynomialSta: {
            const StaPoly sp{b_tau_, tau_};
            const double b = sp.b(s), b1 = sp.b1(s), b2 = sp.b2(s), b3 = sp.b3(s);
            const double w0sq = omega0_ * omega0_;
            return -4.0 * w0sq * b1 / std::pow(b, 5) - (b3 * b - b2 * b1) / (b * b);
        }
        default: {
            // Centered finite differences, stencil shifted inside near the ends.
            const double h = tau_ / 1e4;
            const double tc = std::clamp(t, h, tau_ - h);
            return (omega_sq(tc + h) - omega_sq(tc - h)) / (2.0 * h);
        }
    }
}

double FrequencyProtocol::omega_sq_d2(double t) const {
    const double s = (tau_ > 0) ? std::clamp(t / tau_, 0.0, 1.0) : 0.0;
    switch (kind_) {
        case Kind::Constant:
        case Kind::SuddenQuench:
        case Kind::LinearRamp:
            return 0.0;
        case Kind::SmoothRamp:
            return (omega_f_ * omega_f_ - omega0_ * omega0_) * quintic::q2(s) / (tau_ * tau_);
        case Kind::PolynomialSta: {
            const StaPoly sp{b_tau_, tau_};
            const double b = sp.b(s), b1 = sp.b1(s), b2 = sp.b2(s), b3 = sp.b3(s),
                         b4 = sp.b4(s);
            const double w0sq = omega0_ * omega0_;
            return -4.0 * w0sq * (b2 / std::pow(b, 5) - 5.0 * b1 * b1 / std::pow(b, 6)) -
                   (b4 * b - b2 * b2) / (b * b) + 2.0 * b1 * (b3 * b - b2 * b1) / (b * b * b);
        }
        default: {
            const double h = tau_ / 1e4;
            const double tc = std::clamp(t, h, tau_ - h);
            return (omega_sq(tc + h) - 2.0 * omega_sq(tc) + omega_sq(tc - h)) / (h * h);
        }
    }
}

double FrequencyProtocol::sampled_value(double t) const {
    // Cubic Hermite on the uniform grid, slopes from centered differences
    // (one-sided at the ends); evaluation clamped to [0, tau].
    const size_t n = samples_.size();
    const double h = tau_ / static_cast<double>(n - 1);
    const double x = std::clamp(t, 0.0, tau_) / h;
    size_t i = std::min(static_cast<size_t>(x), n - 2);
    const double u = x - static_cast<double>(i);

    auto slope = [&](size_t k) -> double {
        if (k == 0) return (samples_[1] - samples_[0]) / h;
        if (k == n - 1) return (samples_[n - 1] - samples_[n - 2]) / h;
        return (samples_[k + 1] - samples_[k - 1]) / (2.0 * h);
    };
    const double y0 = samples_[i], y1 = samples_[i + 1];
    const double m0 = slope(i) * h, m1 = slope(i + 1) * h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * m0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * m1;
}

double FrequencyProtocol::local_cd_value(double t) const {
    const FrequencyProtocol& ref = *reference_;
    const double w = ref.omega_sq(t);
    if (w <= 0)
        throw std::domain_error("local-cd: reference trap inverted at t=" + std::to_string(t));
    const double w1 = ref.omega_sq_d1(t);
    const double w2 = ref.omega_sq_d2(t);
    const double omega = std::sqrt(w);
    const double omega_dot = w1 / (2.0 * omega);
    const double omega_ddot = (w2 - 2.0 * omega_dot * omega_dot) / (2.0 * omega);
    // Omega^2 = omega^2 - (3/4)(omega_dot/omega)^2 + omega_ddot/(2 omega)
    return w - 0.75 * (omega_dot * omega_dot) / w + omega_ddot / (2.0 * omega);
}

double FrequencyProtocol::min_omega_sq(int scan_points) const {
    double m = omega_sq(0.0);
    for (int i = 1; i < scan_points; ++i) {
        const double t = tau_ * static_cast<double>(i) / (scan_points - 1);
        m = std::min(m, omega_sq(t));
    }
    return m;
}

bool FrequencyProtocol::monotonic_omega_sq(int scan_points) const {
    if (kind_ == Kind::Constant || kind_ == Kind::SuddenQuench) return true;
    double prev = omega_sq(0.0);
    bool nondec = true, noninc = true;
    const double scale = std::max(std::abs(omega0_ * omega0_), std::abs(omega_f_ * omega_f_));
    const double slack = 1e-12 * scale;
    for (int i = 1; i < scan_points; ++i) {
        const double t = tau_ * static_cast<double>(i) / (scan_points - 1);
        const double v = omega_sq(t);
        if (v < prev - slack) nondec = false;
        if (v > prev + slack) noninc = false;
        prev = v;
    }
    return nondec || noninc;
}

std::string FrequencyProtocol::kind_name(Kind k) {
    switch (k) {
        case Kind::Constant: return "constant";
        case Kind::LinearRamp: return "linear_ramp";
        case Kind::SmoothRamp: return "smooth_ramp";
        case Kind::PolynomialSta: return "sta_poly";
        case Kind::LocalCd: return "local_cd";
        case Kind::SuddenQuench: return "sudden";
        case Kind::Sampled: return "sampled";
    }
    return "?";
}

}  // namespace qotto
