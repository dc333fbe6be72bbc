#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace multlab {

using Rational = mpq_class;
using Integer = mpz_class;

using int128 = __int128;
using uint128 = unsigned __int128;

inline Integer to_integer(uint128 v) {
  Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
  Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return (hi << 64) + lo;
}

inline Integer to_integer(std::int64_t v) {
  Integer r = static_cast<long>(v);
  return r;
}

inline std::string to_string(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

// "p/q" for non-integers, plain "p" otherwise.
inline std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline Integer parse_integer(std::string_view s) {
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body)) throw ParseError("not an integer: '" + std::string(s) + "'", 0);
  Integer v(std::string(body), 10);
  return negative ? Integer(-v) : v;
}

}  // namespace detail

// Parses "p/q", integers and decimal literals (with optional exponent) exactly.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty number", 0);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = detail::parse_integer(text.substr(0, slash));
    Integer den = detail::parse_integer(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    Integer ev = detail::parse_integer(text.substr(e + 1));
    if (!ev.fits_slong_p() || abs(ev) > 4000) throw ParseError("exponent out of range", 0);
    exponent = ev.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((!ip.empty() && !detail::all_digits(ip)) || (!fp.empty() && !detail::all_digits(fp)) ||
        (ip.empty() && fp.empty()))
      throw ParseError("not a number: '" + std::string(text) + "'", 0);
    digits = std::string(ip) + std::string(fp);
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!detail::all_digits(mantissa)) throw ParseError("not a number: '" + std::string(text) + "'", 0);
    digits = std::string(mantissa);
  }
  Integer num(digits, 10);
  if (negative) num = -num;
  long shift = exponent - frac_digits;
  Integer pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  r.canonicalize();
  return r;
}

}  // namespace multlab
