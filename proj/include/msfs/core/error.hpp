#pragma once

#include <stdexcept>
#include <string>

namespace msfs {

// Bad input to an operation: malformed distribution, mismatched grids, bad sizes.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Input is well formed but outside the operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Unknown case study, strategy, or an inconsistent parameter set.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace msfs
