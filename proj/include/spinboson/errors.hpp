#pragma once

#include <stdexcept>
#include <string>

namespace spinboson {

// Bad user-supplied parameter (cutoff < 2, thresholds out of range, ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An operator or state failed a structural contract (Hermiticity, norm, shape).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& what, long iterations)
        : std::runtime_error(what), iterations_(iterations) {}

    long iterations() const noexcept { return iterations_; }

private:
    long iterations_;
};

}  // namespace spinboson
