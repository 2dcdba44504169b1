#pragma once

#include <stdexcept>
#include <string>

namespace evofam {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (|z| >= 1, s > t, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Glued families whose intervals do not share an endpoint.
class IntervalMismatch : public Error {
public:
    using Error::Error;
};

/// Newton inversion of a Loewner chain member did not converge.
class InversionFailure : public Error {
public:
    using Error::Error;
};

/// A solved preimage left the closed unit disk.
class RangeError : public Error {
public:
    using Error::Error;
};

/// The univalence subdivision could not be completed.
class CertificationFailure : public Error {
public:
    using Error::Error;
};

class BasisMismatch : public Error {
public:
    using Error::Error;
};

class LatticeError : public Error {
public:
    using Error::Error;
};

/// The additive function is linear on the lattice, so no discontinuity exists.
class NotDiscontinuous : public Error {
public:
    using Error::Error;
};

/// Malformed configuration, family spec or TOML input.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace evofam
