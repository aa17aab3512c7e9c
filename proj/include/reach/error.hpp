#pragma once

#include <stdexcept>
#include <string>

namespace reach {

// Base class for every error raised by the library. Operations validate
// their preconditions eagerly and throw; nothing returns a partial result.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input documents. Carries a 1-based line/column when the
// position is known so the CLI can point at the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(what), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace reach
