#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace logasm {

using Rational = mpq_class;
using BigInt = mpz_class;

// Which arithmetic an operation ran under. Results that can be produced by
// both carry this tag.
enum class Backend { exact, floating };

// Caller preference; `automatic` picks exact rationals when they are
// available and the problem is small enough (see kExactLimit).
enum class BackendChoice { automatic, exact, floating };

inline constexpr std::size_t kExactLimit = 200;

std::string_view to_string(Backend backend) noexcept;

// Parses "3", "-2/7", "0.125", "1e-3" into an exact rational. Decimal input is
// read exactly (0.1 == 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

// log of a positive big rational without overflowing double.
double log_of(const Rational& q);
double log_of(const BigInt& z);

}  // namespace logasm
