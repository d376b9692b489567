#pragma once

#include <stdexcept>
#include <string>

namespace cableplan {

/// Invalid user input: malformed rasters, bad configs, out-of-range indices.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Two independent computations of the same quantity disagree beyond tolerance.
class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

/// Broken internal invariant; indicates a bug, not bad input.
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cableplan
