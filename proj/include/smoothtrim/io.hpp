#pragma once

#include <istream>
#include <string>
#include <vector>

namespace smoothtrim {

/// Reads a numeric column: one value per line, or comma-separated values on a
/// line. A non-numeric first line is treated as a header; non-numeric tokens
/// anywhere else raise ParameterError naming the line number.
std::vector<double> read_numeric_csv(std::istream&, const std::string& name = "<stream>");

/// File variant; throws ParameterError when the file cannot be opened.
std::vector<double> read_numeric_csv_file(const std::string& path);

}  // namespace smoothtrim
