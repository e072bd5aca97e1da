#pragma once

#include <stdexcept>
#include <string>

namespace gysin {

/// Raised when a caller breaks an operation's precondition (bad flag, varset
/// mismatch, inhomogeneous input, ...). The CLI maps it to exit code 2.
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an exact identity that must hold does not (non-divisible
/// antisymmetrization, inconsistent Schur system). Signals an engine bug.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace gysin
