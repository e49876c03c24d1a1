#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace emodyn {

// RFC-4180 record reader: quoted fields, doubled-quote escapes, embedded
// commas and newlines, tolerant of CRLF line endings.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next record into row. Returns false at end of input. On a
  // structural error (unterminated quote) fills err and returns false.
  bool next(std::vector<std::string>& row, std::string* err = nullptr);

  // 1-based line number at which the last record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 1;
};

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace emodyn
