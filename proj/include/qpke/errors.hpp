#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpke {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numeric argument is outside its documented domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

// A caller broke an operation's precondition (non-Hermitian input,
// inconsistent copies, mismatched layout, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A brute-force path would exceed one of the simulation guards.
class SimulationSizeError : public Error {
public:
    SimulationSizeError(const std::string& what, std::size_t requested, std::size_t guard)
        : Error(what + " (requested " + std::to_string(requested) + ", guard " +
                std::to_string(guard) + ")"),
          requested_(requested),
          guard_(guard) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t guard() const noexcept { return guard_; }

private:
    std::size_t requested_;
    std::size_t guard_;
};

class KeyError : public Error {
public:
    using Error::Error;
};

// Two keys of a family map to (numerically) the same public-key state.
class FamilyInvalidError : public Error {
public:
    using Error::Error;
};

class CorruptedCiphertextError : public Error {
public:
    using Error::Error;
};

class UnsupportedModeError : public Error {
public:
    using Error::Error;
};

// Eve was handed too few public-key copies to run a nontrivial attack.
class InsufficientCopiesError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace qpke
