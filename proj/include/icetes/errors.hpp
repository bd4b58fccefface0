#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace icetes {

// Input data violates a documented invariant (bad sensor value, inverted
// temperatures, malformed row, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A config file is missing, unparsable, or inconsistent.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A time series is missing required hours. Carries the missing hours so
// callers can report them instead of interpolating.
class GapError : public std::runtime_error {
public:
    GapError(const std::string& what, std::vector<std::string> missing)
        : std::runtime_error(what), missing_hours(std::move(missing)) {}
    std::vector<std::string> missing_hours;
};

// A data provider could not answer. `retryable` distinguishes transient
// failures (endpoint down) from permanent ones (bad request).
class ProviderError : public std::runtime_error {
public:
    ProviderError(const std::string& what, bool retryable_)
        : std::runtime_error(what), retryable(retryable_) {}
    bool retryable;
};

}  // namespace icetes
