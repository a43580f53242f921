#pragma once

#include <stdexcept>
#include <string>

namespace recon {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad ids, non-independent sets, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// A leaf graph falls outside the supported base class (chordal graphs),
/// or a cograph-only routine was handed a non-cograph.
class UnsupportedGraphClass : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed. Always a bug, never a user mistake.
class InternalError : public Error {
public:
    using Error::Error;
};

/// The caller broke a documented precondition that is not an input-format
/// problem, e.g. asking for a witness of an unreachable pair.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Brute-force routine asked to handle an instance above its vertex cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

}  // namespace recon

#ifdef NDEBUG
#define RECON_DEBUG_ASSERT(cond, msg) ((void)0)
#else
#define RECON_DEBUG_ASSERT(cond, msg)                                       \
    do {                                                                    \
        if (!(cond)) throw ::recon::InternalError(std::string("assertion failed: ") + (msg)); \
    } while (0)
#endif
