#include "logasm/partitions.hpp"

#include <algorithm>
#include <string>

#include "logasm/errors.hpp"

namespace logasm {

namespace {

void descend(std::size_t remaining, std::size_t max_part, ComponentVector& current,
             std::vector<ComponentVector>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (std::size_t part = std::min(remaining, max_part); part >= 1; --part) {
    current.set(part, current.count(part) + 1);
    descend(remaining - part, part, current, out);
    current.set(part, current.count(part) - 1);
  }
}

}  // namespace

std::vector<ComponentVector> enumerate_level(std::size_t n) {
  if (n > kEnumerateLimit) {
    throw CostGuardError("enumerate_level: n = " + std::to_string(n) + " exceeds the limit " +
                         std::to_string(kEnumerateLimit));
  }
  std::vector<ComponentVector> out;
  ComponentVector current(n);
  descend(n, n, current, out);
  return out;
}

}  // namespace logasm
