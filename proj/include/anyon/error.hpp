#pragma once

#include <stdexcept>
#include <string>

namespace anyon {

// Base of every library error. The check name identifies the contract
// that was violated so the CLI can surface it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string check, const std::string& what)
        : std::runtime_error(check + ": " + what), check_(std::move(check)) {}

    const std::string& check() const noexcept { return check_; }

private:
    std::string check_;
};

// Malformed input: bad arguments, unknown names, bad distributions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Model data violating an anyon-model axiom.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A numerical contract (spectral gap, real matrix element, size cap) failed.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Document parse / schema errors. `check` carries the field path.
class ParseError : public Error {
public:
    using Error::Error;
};

class VersionError : public ParseError {
public:
    using ParseError::ParseError;
};

}  // namespace anyon
