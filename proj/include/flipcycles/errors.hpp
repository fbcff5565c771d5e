#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flipcycles {

// Bad argument values (out-of-range n, k, level, unknown format ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Structurally malformed input: a necklace that violates the exchange rule,
// a label set that is not weakly separated, a non-tiling triangle set.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input is well formed but the operation is undefined on it.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::size_t partial)
        : std::runtime_error(what), partial_count(partial) {}
    std::size_t partial_count;
};

class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace flipcycles
