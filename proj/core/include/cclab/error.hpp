#pragma once

#include <stdexcept>
#include <string>

namespace cclab {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: quiver files, module specs, Laurent strings, JSON.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// An enumeration task exceeded the configured budget.  The message reports
// the estimated cost so the caller can decide whether to raise the budget.
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// A polynomial fit failed its integrity checks (held-out evaluation
// mismatch, non-integer coefficient, inconsistent sample set).
class InterpolationError : public Error {
public:
    explicit InterpolationError(const std::string& msg) : Error(msg) {}
};

// An internal cross-check failed: inexact division where exactness was
// guaranteed, a decomposition that does not re-assemble, a mass formula
// violation, a quantity that should be prime-independent but is not.
// These indicate a bug or an unsupported input and always abort loudly.
class ConsistencyError : public Error {
public:
    explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

// Command line misuse.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

} // namespace cclab
