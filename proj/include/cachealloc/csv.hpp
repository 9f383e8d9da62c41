#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cachealloc {

// Quotes a field when it contains a comma, quote, or newline (RFC 4180).
std::string csv_escape(std::string_view field);

// Shortest round-trip decimal form, '.' separator, locale-free.
std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);
  void blank_line();

 private:
  std::ostream& out_;
};

}  // namespace cachealloc
