#pragma once

#include <string>
#include <vector>

namespace roadstate::util {

/// Writes bytes to a temporary file in the same directory, then renames it
/// over the target, so readers never observe a partially written file.
void atomic_write_file(const std::string& path, const std::string& bytes);

std::string read_file(const std::string& path);

/// Shortest text that round-trips a double exactly ("%.17g").
std::string fmt_double(double v);

/// Splits one CSV line on commas (no quoting; our formats never need it).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace roadstate::util
