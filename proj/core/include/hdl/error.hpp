#pragma once

#include <stdexcept>
#include <string>

namespace hdl {

/// Operands live in Heisenberg groups of different dimension.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An argument violates a documented precondition (nonpositive step, bad grid, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A query falls outside the sampled range (for example a clock inverse past the last knot).
class OutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A path did not leave its domain within the step budget.
class NonExitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed to reach its stated accuracy.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hdl
