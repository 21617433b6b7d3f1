#pragma once

#include <cstddef>
#include <vector>

#include "logasm/component_vector.hpp"

namespace logasm {

inline constexpr std::size_t kEnumerateLimit = 40;

// Every s in Z_+^n with l(s) = n, i.e. the integer partitions of n written as
// multiplicity vectors. Order: partitions in reverse lexicographic order of
// their parts (n first, 1+1+...+1 last). n = 0 yields the single empty
// vector. Refuses n > kEnumerateLimit.
std::vector<ComponentVector> enumerate_level(std::size_t n);

}  // namespace logasm
