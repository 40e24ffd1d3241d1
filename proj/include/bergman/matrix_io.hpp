#pragma once

// Text exchange formats: operator matrices (one JSON metadata line, then rows of
// "re im" pairs) and spectra as "index,value" CSV.

#include <iosfwd>
#include <vector>

#include "bergman/operators.hpp"

namespace bergman {

#include <string>

/// config_json, when non-empty, is embedded verbatim under "config" in the metadata line.
void write_matrix_text(std::ostream& os, const OperatorMatrix& m, const std::string& config_json = "");
OperatorMatrix read_matrix_text(std::istream& is);

void write_spectrum_csv(std::ostream& os, const std::vector<double>& values);
/// Skips "#" comment lines and an optional "index,value" header; values must be listed by increasing index.
std::vector<double> read_spectrum_csv(std::istream& is);

}  // namespace bergman
