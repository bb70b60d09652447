#pragma once

#include <memory>
#include <string>
#include <vector>

namespace qotto {

/// Trap-frequency-squared schedule omega^2(t) on [0, tau].
///
/// The representation is always omega^2, never omega: interior values may be
/// negative (transiently inverted trap), only the endpoints are required to
/// be real trapping frequencies.  All instances are immutable values and safe
/// to share between threads.
///
/// `omega_initial()` is the frequency whose equilibrium state defines the
/// initial condition of the scaling dynamics.  For every continuous kind it
/// equals sqrt(omega_sq(0)).  The sudden-quench kind is the one discontinuous
/// limit: omega_sq(t) == omega_post^2 for all t in [0, tau] while
/// omega_initial() stays at the pre-quench frequency.
class FrequencyProtocol {
public:
    enum class Kind {
        Constant,       // omega^2(t) = omega0^2
        LinearRamp,     // linear ramp of omega^2 between the endpoints
        SmoothRamp,     // quintic blend of omega^2, flat to second order at both ends
        PolynomialSta,  // inverse-engineered from the quintic scaling ansatz
        LocalCd,        // locally counterdiabatic modification of a reference
        SuddenQuench,   // instantaneous jump at t = 0, constant afterwards
        Sampled,        // uniform grid of omega^2 values, cubic interpolation
    };

    static FrequencyProtocol constant(double omega0, double tau);
    static FrequencyProtocol linear_ramp(double omega0, double omega_f, double tau);
    static FrequencyProtocol smooth_ramp(double omega0, double omega_f, double tau);
    /// Built by sta_design: omega^2 = omega0^2/b^4 - bddot/b for the quintic b(t).
    static FrequencyProtocol polynomial_sta(double omega0, double b_tau, double tau);
    /// Pre-quench frequency omega0, post-quench omega_post; tau >= 0 allowed.
    static FrequencyProtocol sudden_quench(double omega0, double omega_post, double tau);
    static FrequencyProtocol sampled(std::vector<double> omega_sq_values, double tau);
    /// Wraps `reference` with the locally counterdiabatic frequency
    /// Omega^2 = omega^2 - (3/4)(wdot/w)^2 + wddot/(2w).  The reference must
    /// keep omega^2 > 0 on all of [0, tau].
    static FrequencyProtocol local_cd(FrequencyProtocol reference);

    Kind kind() const { return kind_; }
    double duration() const { return tau_; }
    /// Reference frequency of the initial equilibrium state (> 0).
    double omega_initial() const { return omega0_; }
    /// Final trapping frequency sqrt(omega_sq(tau)) (> 0).
    double omega_final() const { return omega_f_; }
    /// Target scaling factor of a PolynomialSta protocol.
    double b_tau() const { return b_tau_; }
    /// Reference protocol of a LocalCd instance.
    const FrequencyProtocol& reference() const { return *reference_; }

    double omega_sq(double t) const;
    /// First/second time derivatives of omega^2; analytic for closed-form
    /// kinds, centered finite differences (step tau/1e4) otherwise.
    double omega_sq_d1(double t) const;
    double omega_sq_d2(double t) const;

    /// Minimum of omega^2 over a uniform scan of [0, tau].
    double min_omega_sq(int scan_points = 10001) const;
    /// True if omega^2(t) is monotone (either direction) on a uniform scan.
    bool monotonic_omega_sq(int scan_points = 2001) const;

    static std::string kind_name(Kind k);

private:
    FrequencyProtocol() = default;

    Kind kind_ = Kind::Constant;
    double tau_ = 0.0;
    double omega0_ = 0.0;   // reference/initial frequency
    double omega_f_ = 0.0;  // final frequency
    double b_tau_ = 1.0;    // PolynomialSta only
    std::vector<double> samples_;
    std::shared_ptr<const FrequencyProtocol> reference_;  // LocalCd only

    double sampled_value(double t) const;
    double local_cd_value(double t) const;
};

/// Quintic interpolation blend q(s) = 10 s^3 - 15 s^4 + 6 s^5 and its
/// s-derivatives; q(0)=0, q(1)=1 with two vanishing derivatives at each end.
namespace quintic {
double q(double s);
double q1(double s);
double q2(double s);
double q3(double s);
double q4(double s);
}  // namespace quintic

}  // namespace qotto
