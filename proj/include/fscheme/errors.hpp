#pragma once

#include <stdexcept>
#include <string>

namespace fscheme {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed text, file or alphabet spec.
struct ParseError : Error {
    using Error::Error;
};

// An edge (u, a, v) without its inverse (v, a^-1, u).
struct SerreViolation : Error {
    using Error::Error;
};

struct DuplicateSlot : Error {
    using Error::Error;
};

// Explicit enumeration would exceed the configured size limit.
struct BudgetExceeded : Error {
    using Error::Error;
};

// Evacuation requested on an automaton with an empty inner boundary.
struct NoEvacuationTarget : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace fscheme
