#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace aba {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would exceed its configured size limit.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::string what_enumerated, std::size_t count, std::size_t budget)
        : Error(what_enumerated + ": " + std::to_string(count) + " exceeds budget of " +
                std::to_string(budget)),
          count_(count),
          budget_(budget) {}

    std::size_t count() const noexcept { return count_; }
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t count_;
    std::size_t budget_;
};

class EmptyUniverse : public Error {
public:
    EmptyUniverse() : Error("cannot ground a framework with variables over an empty universe") {}
};

struct Diagnostic {
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

class ParseError : public Error {
public:
    explicit ParseError(Diagnostic d)
        : Error(std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message),
          diagnostic_(std::move(d)) {}

    const Diagnostic& diagnostic() const noexcept { return diagnostic_; }

private:
    Diagnostic diagnostic_;
};

class ValidationError : public Error {
public:
    ValidationError(std::string summary, std::vector<std::string> messages)
        : Error(std::move(summary)), messages_(std::move(messages)) {}

    const std::vector<std::string>& messages() const noexcept { return messages_; }

private:
    std::vector<std::string> messages_;
};

/// A transformation rule was applied outside its preconditions.
class TransformError : public Error {
public:
    using Error::Error;
};

}  // namespace aba
