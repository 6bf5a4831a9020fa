#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "prodcheck/term.hpp"

namespace prodcheck {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// The program file could not be read.
class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A functor or predicate used with two different arities.
class ArityError : public ParseError {
public:
    ArityError(std::size_t line, std::size_t column, const std::string& symbol,
               std::size_t expected, std::size_t found);
    const std::string& symbol() const { return symbol_; }

private:
    std::string symbol_;
};

/// Parses Prolog-style Horn clauses: "head." or "head :- b1, ..., bn.".
/// Identifiers starting with an uppercase letter or '_' are variables; each
/// '_' is a distinct anonymous variable. '%' starts a line comment.
Program parse_program(std::string_view text);

/// Parses a single atom with an optional trailing '.'.
Atom parse_goal(std::string_view text);

/// Reads and parses a program file. Throws FileError if it cannot be read.
Program load_program(const std::string& path);

} // namespace prodcheck
