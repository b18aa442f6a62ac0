#ifndef FINPROJ_ERRORS_HPP
#define FINPROJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace finproj {

/// Malformed input data: bad scenario fields, invalid invariants on construction.
class SchemaError : public std::invalid_argument {
public:
    explicit SchemaError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Structural mismatch between objects (partition vs space, process vs grid, ...).
class StructuralError : public std::invalid_argument {
public:
    explicit StructuralError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A mathematical hypothesis of an operation does not hold on the given instance.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An enumeration-based operation refused the instance: count exceeds the cap.
class TooLargeError : public std::runtime_error {
public:
    explicit TooLargeError(const std::string& msg)
        : std::runtime_error("instance too large: " + msg) {}
};

} // namespace finproj

#endif
