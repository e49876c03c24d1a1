#include "emodyn/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>

namespace emodyn {

bool CsvReader::next(std::vector<std::string>& row, std::string* err) {
  row.clear();
  int c = in_.get();
  if (c == EOF) return false;
  record_line_ = line_;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (;;) {
    if (c == EOF) {
      if (quoted) {
        if (err) *err = "unterminated quoted field";
        return false;
      }
      row.push_back(std::move(field));
      return true;
    }
    const char ch = static_cast<char>(c);
    if (ch == '\n') ++line_;
    if (quoted) {
      if (ch == '"') {
        const int nxt = in_.peek();
        if (nxt == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty() && !any) {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = false;
      c = in_.get();
      continue;
    } else if (ch == '\r') {
      if (in_.peek() == '\n') {
        in_.get();
        ++line_;
      }
      row.push_back(std::move(field));
      return true;
    } else if (ch == '\n') {
      row.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
      any = true;
    }
    c = in_.get();
  }
}

std::string csv_escape(std::string_view field) {
  const bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    out << csv_escape(fields[i]);
  }
  out.put('\n');
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace emodyn
