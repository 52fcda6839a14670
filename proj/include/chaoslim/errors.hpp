#ifndef CHAOSLIM_ERRORS_HPP
#define CHAOSLIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chaoslim {

/// Raised when user-supplied parameters or config contents violate a
/// documented precondition (bad ranges, malformed specs, block mismatches).
/// The CLI maps this to exit code 3.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when an operation requiring a specific memory regime (SRD vs LRD)
/// receives a spec of the other kind.
class RegimeError : public ValidationError {
public:
    explicit RegimeError(const std::string& msg) : ValidationError(msg) {}
};

} // namespace chaoslim

#endif
