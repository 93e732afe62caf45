#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aploco {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- decision-problem construction / staging -------------------------------

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NonFiniteValue : public Error {
public:
    using Error::Error;
};

class NegativeWeight : public Error {
public:
    using Error::Error;
};

class DuplicateId : public Error {
public:
    using Error::Error;
};

class WeightSumViolation : public Error {
public:
    using Error::Error;
};

class StageMismatch : public Error {
public:
    using Error::Error;
};

/// A computed result violated one of its own postconditions. The CLI maps
/// this to exit code 2; data errors map to exit code 1.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

// -- dataset encoding / training --------------------------------------------

class UnknownLevel : public Error {
public:
    using Error::Error;
};

class MissingField : public Error {
public:
    using Error::Error;
};

class ZeroVariance : public Error {
public:
    using Error::Error;
};

class EmptyDataset : public Error {
public:
    using Error::Error;
};

class EmptyPartition : public Error {
public:
    using Error::Error;
};

class NonFiniteLoss : public Error {
public:
    using Error::Error;
};

class DegenerateImportance : public Error {
public:
    using Error::Error;
};

class UnmappedCriterion : public Error {
public:
    using Error::Error;
};

// -- file ingestion ----------------------------------------------------------

/// Malformed file content. Carries 1-based row/column coordinates of the
/// offending cell so the CLI can point at it.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t col)
        : Error(what + " (row " + std::to_string(row) + ", column " + std::to_string(col) + ")"),
          row_(row),
          col_(col) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

class IdMismatch : public Error {
public:
    using Error::Error;
};

class SchemaViolation : public Error {
public:
    using Error::Error;
};

}  // namespace aploco
