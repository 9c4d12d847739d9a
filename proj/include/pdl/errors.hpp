#pragma once

#include <stdexcept>
#include <string>

namespace pdl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised by the formula parser and the file readers; carries 1-based position.
struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

struct CapExceeded : Error {
    using Error::Error;
};

struct UnknownVariable : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace pdl
