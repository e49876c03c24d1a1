#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace emodyn {

// Metadata header prepended to every output artifact so results carry their
// full provenance. Keys are emitted in sorted order; rerunning with equal
// inputs reproduces the bytes exactly.
class MetaHeader {
 public:
  void set(const std::string& key, const std::string& value) {
    entries_[key] = value;
  }

  // As '#'-prefixed comment lines (CSV and friends).
  void write_csv(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << "# " << k << '=' << v << '\n';
  }

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

// Opens an output stream: a file path, or stdout for "-".
struct OutputStream {
  explicit OutputStream(const std::string& target);
  std::ostream& stream();

 private:
  std::unique_ptr<std::ofstream> file_;
  bool to_stdout_ = false;
};

}  // namespace emodyn
