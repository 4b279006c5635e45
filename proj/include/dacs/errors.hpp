#pragma once

#include <stdexcept>
#include <string>

namespace dacs {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad file, bad schema, dimension mismatch, out-of-range
/// parameter. Maps to CLI exit code 2.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

/// A model assumption fails on structurally valid input: no spanning tree,
/// gains not Hurwitz, missing leader-following block form, unsolvable
/// Lyapunov equation. Maps to CLI exit code 1.
class AssumptionError : public Error {
public:
    explicit AssumptionError(const std::string& what) : Error(what) {}
};

} // namespace dacs
