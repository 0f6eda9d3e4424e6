#pragma once

#include <stdexcept>
#include <string>

namespace nbtail {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative method (continued fraction, adaptive quadrature) ran out of
/// its iteration or subdivision budget before meeting its tolerance.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail_domain(const char* where, const std::string& what) {
    throw domain_error(std::string(where) + ": " + what);
}

}  // namespace detail
}  // namespace nbtail
