#pragma once

#include <stdexcept>
#include <string>

namespace minbase {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (bad degree, malformed text, a < 4, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An enumeration cap or search budget was hit. Never a mathematical verdict.
class BudgetError : public Error {
public:
    using Error::Error;
};

}  // namespace minbase
