#pragma once

#include <stdexcept>
#include <string>

namespace adm {

// Bad user input: malformed config, out-of-range parameter, inconsistent grid.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
    ConfigError(const std::string& msg, std::string key)
        : std::runtime_error(msg), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// Runtime numerical failure: NaN/Inf state, CFL violation.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& msg, double t) : std::runtime_error(msg), t_(t) {}
    double time() const { return t_; }

private:
    double t_;
};

class CflError : public NumericalError {
public:
    CflError(const std::string& msg, double t, double dt_limit)
        : NumericalError(msg, t), dt_limit_(dt_limit) {}
    double dt_limit() const { return dt_limit_; }

private:
    double dt_limit_;
};

} // namespace adm
