#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace logasm {

// 64-bit FNV-1a, used to fingerprint canonical spec strings.
std::uint64_t fnv1a64(std::string_view text);
std::string hex64(std::uint64_t value);

// Shortest round-trip decimal form of a double.
std::string format_double(double value);

struct CsvProvenance {
  std::string tool_version;
  std::string spec;  // canonical spec text; hashed into the header
  std::uint64_t seed = 0;
  std::string backend;
  std::vector<std::pair<std::string, std::string>> extra;  // further key=value pairs
};

// RFC 4180 writer: fields containing comma, quote, CR or LF are quoted with
// inner quotes doubled. Lines end in "\n". The provenance header is a
// single '#'-prefixed line.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const CsvProvenance& provenance);
  void row(const std::vector<std::string>& fields);

  static std::string quote(std::string_view field);

 private:
  std::ostream& out_;
};

}  // namespace logasm
