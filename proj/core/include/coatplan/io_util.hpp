#pragma once

#include <string>
#include <vector>

namespace coatplan::io {

/// Shortest round-trip decimal form of v (std::to_chars). The same value
/// always prints the same bytes, which keeps seeded outputs byte-identical.
std::string format_double(double v);

/// Parses a finite double; throws std::invalid_argument on junk.
double parse_double(const std::string& s, const std::string& what);

/// Parses a nonnegative integer; throws std::invalid_argument on junk.
long parse_nonneg_long(const std::string& s, const std::string& what);

std::vector<std::string> split_csv_line(const std::string& line);

/// Strips one trailing '\r' (CRLF input).
std::string strip_cr(std::string line);

}  // namespace coatplan::io
