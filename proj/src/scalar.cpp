#include "cmt/scalar.hpp"

#include "cmt/error.hpp"

#include <cctype>
#include <cstdio>

namespace cmt {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// mpz string conversion guesses the base, so "025" would be octal
Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer{std::string(digits)};
}

Integer pow10(long exponent) {
  Integer result = 1;
  for (long i = 0; i < exponent; ++i) result *= 10;
  return result;
}

[[noreturn]] void fail(std::string_view text) {
  throw Error(ErrorCode::ParseError, "not a rational number: '" + std::string(text) + "'");
}

Integer parse_integer(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) fail(whole);
  Integer value = decimal_integer(text);
  return negative ? Integer(-value) : value;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    Integer exp = parse_integer(text.substr(e + 1), whole);
    if (abs(exp) > 4096) fail(whole);
    exponent = exp.convert_to<long>();
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto int_part = text.substr(0, dot);
    auto frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) fail(whole);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
      fail(whole);
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(text)) fail(whole);
    digits = std::string(text);
  }
  Rational value{decimal_integer(digits)};
  if (exponent > 0) value *= Rational(pow10(exponent));
  if (exponent < 0) value /= Rational(pow10(-exponent));
  return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (text.empty()) fail(whole);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(text.substr(0, slash)), whole);
    Integer den = parse_integer(trim(text.substr(slash + 1)), whole);
    if (den == 0) fail(whole);
    return Rational(num, den);
  }
  return parse_decimal(text, whole);
}

std::string to_string(const Rational& value) {
  auto den = denominator_of(value);
  if (den == 1) return numerator_of(value).str();
  return numerator_of(value).str() + "/" + den.str();
}

std::string to_human(const Rational& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", to_double(value));
  return to_string(value) + " (≈" + buf + ")";
}

}  // namespace cmt
