#pragma once

#include <stdexcept>
#include <string>

namespace covrad {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad symbols, mismatched alphabets, invalid graphs, bad
// parameters.
struct InputError : Error {
    using Error::Error;
};

// A construction or trim produced a presentation with no bi-infinite paths.
struct EmptyLanguageError : Error {
    using Error::Error;
};

// A configurable size cap was hit (language enumeration, subset construction,
// code tables).
struct CapExceededError : Error {
    using Error::Error;
};

// An operation that needs a deterministic presentation was handed a
// nondeterministic one.  Callers should determinize first.
struct NotDeterministicError : Error {
    using Error::Error;
};

// The bound LP has no feasible point; no Markov-extension bound is available
// from these presentations.
struct InfeasibleError : Error {
    using Error::Error;
};

// The simplex solver aborted because every candidate pivot was too small to
// trust.
struct NumericalInstabilityError : Error {
    using Error::Error;
};

// An iterative routine ran out of its iteration budget.
struct ConvergenceError : Error {
    using Error::Error;
};

}  // namespace covrad
