#pragma once

#include <stdexcept>
#include <string>

namespace cqexp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or invariant-violating input: bad document, non-Hermitian
/// matrix, trace off unity, inconsistent dimensions.
struct ValidationError : Error {
    using Error::Error;
};

/// A scalar function was applied to an eigenvalue outside its domain.
struct DomainError : Error {
    double eigenvalue = 0.0;
    explicit DomainError(const std::string& what) : Error(what) {}
    DomainError(const std::string& what, double ev) : Error(what), eigenvalue(ev) {}
};

/// An iterative solver hit its iteration cap.
struct ConvergenceError : Error {
    using Error::Error;
};

}  // namespace cqexp
