#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace colstack {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column)
    {
    }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Stack order differs from the automaton's order.
class OrderMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A run certificate lacks an entry a run condition needs, or names a
/// position, order or state that does not exist.
class MalformedCertificate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotAccepted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured search or enumeration budget ran out.
class ResourceBoundExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MalformedWitness : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace colstack
