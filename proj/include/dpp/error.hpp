#pragma once

#include <stdexcept>
#include <string>

namespace dpp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad size, bad range, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two objects that must live on the same ground set do not.
class SpaceMismatch : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A set family fails one of the block-design conditions.
class NotADesign : public Error {
public:
    enum class Condition { block_size, replication, pair_balance, single_block };

    NotADesign(Condition condition, std::string detail)
        : Error("not a block design: " + detail), condition_(condition) {}

    Condition condition() const noexcept { return condition_; }

private:
    Condition condition_;
};

/// Malformed input data (CSV ingestion, pattern parsing).
class ParseError : public Error {
public:
    using Error::Error;
};

/// An input table lacks a required pattern for some book.
class MissingPattern : public ParseError {
public:
    MissingPattern(std::string book, std::string pattern)
        : ParseError("book '" + book + "' has no row for pattern " + pattern), book_(std::move(book)),
          pattern_(std::move(pattern)) {}

    const std::string& book() const noexcept { return book_; }
    const std::string& pattern() const noexcept { return pattern_; }

private:
    std::string book_;
    std::string pattern_;
};

} // namespace dpp
