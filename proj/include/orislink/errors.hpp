#pragma once

#include <stdexcept>
#include <string>

namespace orislink {

/// Invalid physical parameter or malformed configuration.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to produce a trustworthy value.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double error_estimate = 0.0)
        : std::runtime_error(what), error_estimate_(error_estimate) {}

    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

}  // namespace orislink
