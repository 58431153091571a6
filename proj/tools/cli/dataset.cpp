#include "cli/dataset.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <vector>

namespace convexpmf::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_integer(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw DatasetError("line " + std::to_string(line) + ": " + msg);
}

void add(std::vector<std::uint64_t>& counts, std::size_t line, std::int64_t value, std::uint64_t count) {
  if (value < 0) fail(line, "negative value " + std::to_string(value));
  if (value > kMaxObservedValue) fail(line, "value " + std::to_string(value) + " is too large");
  const auto v = static_cast<std::size_t>(value);
  if (counts.size() <= v) counts.resize(v + 1, 0);
  counts[v] += count;
}

}  // namespace

InputFormat parse_format(std::string_view name) {
  if (name == "raw") return InputFormat::Raw;
  if (name == "counts") return InputFormat::Counts;
  throw std::invalid_argument("unknown input format '" + std::string(name) + "'");
}

EmpiricalPmf read_dataset(std::istream& in, InputFormat format) {
  std::vector<std::uint64_t> counts;
  std::string raw;
  std::size_t line = 0;
  bool seen_data = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    if (format == InputFormat::Raw) {
      std::int64_t v = 0;
      if (!parse_integer(text, v)) fail(line, "expected a nonnegative integer, got '" + std::string(text) + "'");
      add(counts, line, v, 1);
    } else {
      const auto comma = text.find(',');
      if (comma == std::string_view::npos) fail(line, "expected 'value,count'");
      std::int64_t v = 0;
      std::int64_t c = 0;
      const bool ok = parse_integer(text.substr(0, comma), v) && parse_integer(text.substr(comma + 1), c);
      if (!ok) {
        if (!seen_data && trim(text.substr(0, comma)) == "value") continue;  // header
        fail(line, "expected 'value,count', got '" + std::string(text) + "'");
      }
      if (c <= 0) fail(line, "count must be positive");
      add(counts, line, v, static_cast<std::uint64_t>(c));
    }
    seen_data = true;
  }
  if (!seen_data) throw DatasetError("no observations");
  return EmpiricalPmf(std::move(counts));
}

EmpiricalPmf read_dataset(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open '" + path.string() + "'");
  return read_dataset(in, format);
}

}  // namespace convexpmf::cli
