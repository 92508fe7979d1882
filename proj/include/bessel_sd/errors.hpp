#pragma once

#include <stdexcept>
#include <string>

namespace bessel_sd {

/// Input outside an operation's domain (nonpositive y, mu <= 0, pole of Gamma, ...).
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An adaptive routine ran out of its evaluation budget before meeting its tolerance.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested relative accuracy is below what native double precision can
/// deliver for this evaluator at these parameters (cancellation too large).
class precision_exhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bessel_sd
