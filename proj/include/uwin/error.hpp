#pragma once

#include <stdexcept>
#include <string>

namespace uwin {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input violated a structural precondition (widths, arities, ranges).
struct ValidationError : Error {
    using Error::Error;
};

/// Text input could not be parsed; carries a 1-based line number.
struct ParseError : Error {
    ParseError(int line_no, const std::string& what)
        : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    int line;
};

/// An enumeration exceeded its configured budget. Never silently truncate.
struct BudgetError : Error {
    using Error::Error;
};

} // namespace uwin
