#pragma once

#include <stdexcept>
#include <string>

namespace etmrs {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The circuit/decoding cost cannot be represented on the battery lattice
/// (alpha > C, or alpha leaves no room for a forwarding level).
class AlphaExceedsCapacity : public Error {
public:
    explicit AlphaExceedsCapacity(const std::string& what) : Error(what) {}
};

/// Exact subset enumeration requested beyond the supported relay count.
class TooManyRelays : public Error {
public:
    explicit TooManyRelays(const std::string& what) : Error(what) {}
};

/// The exhaustive threshold lattice exceeds the evaluation guard.
class SearchSpaceTooLarge : public Error {
public:
    explicit SearchSpaceTooLarge(const std::string& what) : Error(what) {}
};

/// The stationary linear system could not be solved; signals a malformed
/// (non-irreducible) battery chain.
class SingularSystem : public Error {
public:
    explicit SingularSystem(const std::string& what) : Error(what) {}
};

/// Scenario file could not be parsed or violates a documented constraint.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace etmrs
