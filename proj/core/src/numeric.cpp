#include "logasm/numeric.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

#include "logasm/errors.hpp"

namespace logasm {

std::string_view to_string(Backend backend) noexcept {
  return backend == Backend::exact ? "exact" : "float";
}

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ArgumentError("malformed number '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ArgumentError("malformed number '" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(digits), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ArgumentError("empty number");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), whole);
    BigInt den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw ArgumentError("zero denominator in '" + std::string(whole) + "'");
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string exp_text(text.substr(e + 1));
      try {
        std::size_t used = 0;
        exponent = std::stol(exp_text, &used);
        if (used != exp_text.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ArgumentError("malformed exponent in '" + std::string(whole) + "'");
      }
      text = text.substr(0, e);
    }
    std::string digits;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
      exponent -= static_cast<long>(text.size() - dot - 1);
      if (digits.empty()) throw ArgumentError("malformed number '" + std::string(whole) + "'");
    } else {
      digits = std::string(text);
    }
    BigInt mantissa = parse_integer(digits, whole);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    value = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

double to_double(const Rational& q) { return q.get_d(); }

double log_of(const BigInt& z) {
  if (sgn(z) <= 0) return -HUGE_VAL;
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

double log_of(const Rational& q) {
  if (sgn(q) <= 0) return -HUGE_VAL;
  return log_of(BigInt(q.get_num())) - log_of(BigInt(q.get_den()));
}

}  // namespace logasm
