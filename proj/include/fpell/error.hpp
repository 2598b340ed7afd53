#pragma once

#include <stdexcept>
#include <string>

namespace fpell {

/// Input that violates a documented precondition (bad prime, mismatched presentations, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A text document failed to parse; carries the 1-based position of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, int line, int column, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          source_(std::move(source)),
          line_(line),
          column_(column) {}

    const std::string& source() const { return source_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    std::string source_;
    int line_;
    int column_;
};

}  // namespace fpell
