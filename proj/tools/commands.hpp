#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "bergman/operators.hpp"

namespace bergman::cli {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

/// "a+bi" with either part optional: 1, -0.5, 2-i, 3i, -i, 1e-3+2.5e-1i
cd parse_complex(const std::string& text, std::size_t offset = 0);

/// "nu=<float>;U=<c1>,<c2>,..."; either field may be omitted (nu = 0, U = 0).
SymbolU parse_symbol(const std::string& text);

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// Runs the command line (args excludes the program name). Payload goes to `out`,
/// progress and JSON diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bergman::cli
