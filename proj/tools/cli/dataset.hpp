#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "convexpmf/pmf.hpp"

namespace convexpmf::cli {

enum class InputFormat {
  Raw,     // one nonnegative integer per line
  Counts,  // "value,count" per line, optional "value,count" header
};

InputFormat parse_format(std::string_view name);

/// Malformed input; the message carries the 1-based line number.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Blank lines and lines starting with '#' are ignored.
EmpiricalPmf read_dataset(std::istream& in, InputFormat format);
EmpiricalPmf read_dataset(const std::filesystem::path& path, InputFormat format);

}  // namespace convexpmf::cli
