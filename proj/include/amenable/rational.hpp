#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace amenable {

/// Exact ratio used by every density, defect and weight kernel.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r)
{
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline nlohmann::json to_json(const Rational& r)
{
  return nlohmann::json{{"num", r.numerator()}, {"den", r.denominator()}};
}

/// For sums whose common denominator outgrows 64 bits.
using BigRational = boost::multiprecision::cpp_rational;

inline BigRational to_big(const Rational& r) { return BigRational(r.numerator(), r.denominator()); }

/// {num, den}; parts that do not fit in 64 bits are written as decimal strings.
inline nlohmann::json to_json(const BigRational& r)
{
  auto part = [](const boost::multiprecision::cpp_int& v) -> nlohmann::json {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
      return static_cast<std::int64_t>(v);
    return v.str();
  };
  return nlohmann::json{{"num", part(numerator(r))}, {"den", part(denominator(r))}};
}

inline Rational rational_from_json(const nlohmann::json& j)
{
  return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

inline double to_double(const Rational& r)
{
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Parses "3/7", "-2", or a plain decimal such as "0.25" exactly.
inline Rational parse_rational(std::string_view text)
{
  auto fail = [&] { return DomainError("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty())
    throw fail();

  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty())
      throw fail();
    std::size_t pos = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      pos = 1;
    }
    if (pos == s.size())
      throw fail();
    std::int64_t v = 0;
    for (; pos < s.size(); ++pos) {
      if (s[pos] < '0' || s[pos] > '9')
        throw fail();
      v = v * 10 + (s[pos] - '0');
    }
    return neg ? -v : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto den = parse_int(text.substr(slash + 1));
    if (den == 0)
      throw fail();
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15)
      throw fail();
    bool neg = !whole.empty() && whole[0] == '-';
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
      scale *= 10;
    std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
    std::int64_t f = parse_int(frac);
    std::int64_t num = (w < 0 ? -w : w) * scale + f;
    return Rational(neg ? -num : num, scale);
  }
  return Rational(parse_int(text));
}

} // namespace amenable
