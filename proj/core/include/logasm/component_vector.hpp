#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace logasm {

// Counts s_1..s_n of components of each size. Indexing through count()/set()
// is 1-based to follow the size label j; counts() exposes the raw 0-based
// storage.
class ComponentVector {
 public:
  ComponentVector() = default;
  explicit ComponentVector(std::size_t dimension) : counts_(dimension, 0) {}
  explicit ComponentVector(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {}
  ComponentVector(std::initializer_list<std::uint32_t> counts) : counts_(counts) {}

  std::size_t dimension() const noexcept { return counts_.size(); }

  std::uint32_t count(std::size_t j) const { return counts_.at(j - 1); }
  void set(std::size_t j, std::uint32_t value) { counts_.at(j - 1) = value; }

  std::span<const std::uint32_t> counts() const noexcept { return counts_; }

  // l(s) = 1*s_1 + ... + n*s_n.
  std::uint64_t size_statistic() const noexcept {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      total += static_cast<std::uint64_t>(i + 1) * counts_[i];
    }
    return total;
  }

  // l restricted to sizes 1..r.
  std::uint64_t partial_size_statistic(std::size_t r) const noexcept {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < r && i < counts_.size(); ++i) {
      total += static_cast<std::uint64_t>(i + 1) * counts_[i];
    }
    return total;
  }

  std::uint64_t total_components() const noexcept {
    std::uint64_t total = 0;
    for (auto c : counts_) total += c;
    return total;
  }

  ComponentVector prefix(std::size_t r) const {
    return ComponentVector(std::vector<std::uint32_t>(
        counts_.begin(), counts_.begin() + static_cast<std::ptrdiff_t>(r)));
  }

  // Comma-separated counts, the wire format of the `sample` subcommand.
  std::string to_csv() const;

  auto operator<=>(const ComponentVector&) const = default;
  bool operator==(const ComponentVector&) const = default;

 private:
  std::vector<std::uint32_t> counts_;
};

inline std::string ComponentVector::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(counts_[i]);
  }
  return out;
}

}  // namespace logasm
