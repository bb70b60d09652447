#pragma once

#include <stdexcept>
#include <string>

namespace qotto {

/// Thrown when an ODE solve leaves the configured trust region (e.g. the
/// scaling factor collapses or blows up for an inverted-trap protocol).
class SolverDivergence : public std::runtime_error {
public:
    SolverDivergence(const std::string& what, double t_fail)
        : std::runtime_error(what), time_of_failure(t_fail) {}
    double time_of_failure;
};

/// Thrown by the spectral-tracking code when two instantaneous levels come
/// closer than the configured degeneracy threshold.
class DegeneracyError : public std::runtime_error {
public:
    DegeneracyError(const std::string& what, double t, int lower_level)
        : std::runtime_error(what), time(t), level(lower_level) {}
    double time;  // where the near-crossing was detected
    int level;    // lower index of the offending pair (level, level+1)
};

/// Configuration / input-file error carrying the offending field name.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string field_name = {})
        : std::runtime_error(what), field(std::move(field_name)) {}
    std::string field;
};

}  // namespace qotto
