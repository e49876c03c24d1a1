#include "emodyn/report.hpp"

#include <iostream>
#include <stdexcept>

namespace emodyn {

OutputStream::OutputStream(const std::string& target) {
  if (target.empty() || target == "-") {
    to_stdout_ = true;
    return;
  }
  const std::filesystem::path path(target);
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*file_)
    throw std::runtime_error("cannot open output file: " + target);
}

std::ostream& OutputStream::stream() {
  return to_stdout_ ? std::cout : *file_;
}

}  // namespace emodyn
