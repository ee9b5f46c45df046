#pragma once

#include <stdexcept>
#include <string>

namespace paygmix {

// Invalid argument or parameter outside the domain of a formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Adaptive quadrature ran out of its subdivision budget.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

// Root finder was handed an interval without a sign change, or a search
// could not bracket its target.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace paygmix
