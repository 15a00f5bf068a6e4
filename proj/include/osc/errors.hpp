#pragma once

#include <stdexcept>
#include <string>

namespace osc {

/// Vector lengths disagree, or a vector/grid is empty where one is required.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (r not in [1,n],
/// quantile level not in (0,1), point outside the support window, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A caller-side precondition on weights or orderings was violated.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Invalid scenario configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine could not certify the requested tolerance.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

}  // namespace osc

namespace osc {

/// File system failure; the message carries the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace osc
