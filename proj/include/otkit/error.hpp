#pragma once

// Shared error and warning types for the otkit parsers and engines.

#include <stdexcept>
#include <string>
#include <vector>

namespace otkit {

struct OtError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hard error with a 1-based source line; line 0 means "no line information".
struct ParseError : OtError {
    int line;

    ParseError(int line_, const std::string& what_)
        : OtError(line_ > 0 ? "line " + std::to_string(line_) + ": " + what_ : what_),
          line(line_) {}
};

// Non-fatal note produced while parsing, e.g. a defaulted start symbol.
struct Diagnostic {
    int line = 0;
    std::string message;
};

}  // namespace otkit
