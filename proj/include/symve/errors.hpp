#pragma once

#include <stdexcept>
#include <string>

namespace symve {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A variable id was requested from an assignment that does not bind it.
struct MissingVariableError : Error {
    using Error::Error;
};

// Two operands disagree on the cardinality of a shared variable.
struct CardinalityMismatchError : Error {
    using Error::Error;
};

// A variable id is not part of the scope/graph it was used with.
struct UnknownVariableError : Error {
    using Error::Error;
};

// A variable was eliminated twice in the same run.
struct AlreadyEliminatedError : Error {
    using Error::Error;
};

// An elimination order is not a permutation of the live variables.
struct NotAPermutationError : Error {
    using Error::Error;
};

// An enumeration or search exceeds its configured limit.
struct TooLargeError : Error {
    using Error::Error;
};

// A rank or value is outside its valid range.
struct OutOfRangeError : Error {
    using Error::Error;
};

// An exact integer computation exceeds 64 bits; reported, never wrapped.
struct OverflowError : Error {
    using Error::Error;
};

// A declared symmetry group fails the transposition test. Carries a
// concrete counterexample: two permuted flat table indices with
// different potentials.
struct NotSymmetricError : Error {
    NotSymmetricError(std::string msg, std::size_t index_a, std::size_t index_b)
        : Error(std::move(msg)), witness_a(index_a), witness_b(index_b) {}
    std::size_t witness_a;
    std::size_t witness_b;
};

// A configuration value is malformed (bench parameters, policy parameters).
struct InvalidConfigError : Error {
    using Error::Error;
};

// Model text could not be parsed; carries the 1-based source line.
struct ParseError : Error {
    ParseError(int line_number, const std::string& reason)
        : Error("line " + std::to_string(line_number) + ": " + reason), line(line_number) {}
    int line;
};

// Parsed model violates a structural invariant (bad cardinality, table
// length mismatch, failed symmetry declaration).
struct ValidationError : Error {
    using Error::Error;
};

// A file could not be read or written.
struct IoError : Error {
    using Error::Error;
};

}  // namespace symve
