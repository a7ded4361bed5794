#pragma once

#include <stdexcept>
#include <string>

namespace pdt {

// Raised when a builder receives input violating its preconditions
// (unsorted keys, duplicates, gap constraints, ...).
class BuildError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed user input: corpus lines with NUL bytes, bad query ids.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed or corrupted serialized container.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pdt
