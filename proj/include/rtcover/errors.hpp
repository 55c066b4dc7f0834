#pragma once

#include <stdexcept>
#include <string>

namespace rtcover {

/// Thrown when an enumeration or search would exceed its configured budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a construction needs an ingredient (e.g. a verified covering
/// array for a strength it cannot build itself) that was not supplied.
class DependencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed array/code files.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rtcover
