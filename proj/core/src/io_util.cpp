#include "coatplan/io_util.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace coatplan::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& what) {
  if (s.empty()) throw std::invalid_argument(what + ": empty field");
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v)) {
    throw std::invalid_argument(what + ": not a finite number: '" + s + "'");
  }
  return v;
}

long parse_nonneg_long(const std::string& s, const std::string& what) {
  if (s.empty()) throw std::invalid_argument(what + ": empty field");
  long v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || v < 0) {
    throw std::invalid_argument(what + ": not a nonnegative integer: '" + s +
                                "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace coatplan::io
