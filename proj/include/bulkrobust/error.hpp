#pragma once

#include <stdexcept>
#include <string>

namespace bulkrobust {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or structurally invalid input file.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Rotation system fails the Euler check or the graph is disconnected.
class EmbeddingError : public Error {
public:
    using Error::Error;
};

/// The instance admits no feasible solution.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// An internal guarantee was violated. Seeing one of these means a bug.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// An enumeration cap was hit before the computation finished.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

inline void check_invariant(bool cond, const std::string& what)
{
    if (!cond) {
        throw InvariantError(what);
    }
}

} // namespace bulkrobust
