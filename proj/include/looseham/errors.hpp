#pragma once

#include <stdexcept>
#include <string>

namespace looseham {

// Precondition violations (bad arguments, malformed structures).
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Hypergraph text format / certificate JSON errors.
struct ParseError : std::runtime_error {
    int line = 0;
    explicit ParseError(const std::string& what, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what : what),
          line(line_no) {}
};

}  // namespace looseham
