#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fei {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rational make_rational(const Integer& num, const Integer& den)
{
  if (den == 0)
    throw std::domain_error("zero denominator");
  return Rational(num, den);
}

inline Rational pow2_rational(int e)
{
  Integer one = 1;
  return e >= 0 ? Rational(one << e) : Rational(one, one << -e);
}

/// always "a/b", also for integers
inline std::string to_string(const Rational& r)
{
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// accepts "a", "a/b" and finite decimals "0.625"
inline Rational parse_rational(std::string_view text)
{
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("not a rational: '" + s + "'"); };
  if (s.empty())
    throw bad();
  auto is_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+'))
      t.remove_prefix(1);
    if (t.empty())
      return false;
    for (char c : t)
      if (c < '0' || c > '9')
        return false;
    return true;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    auto a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!is_int(a) || !is_int(b))
      throw bad();
    return make_rational(Integer(a), Integer(b));
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    auto a = s.substr(0, dot), b = s.substr(dot + 1);
    if (a.empty() || a == "-" || a == "+")
      a += "0";
    if (!is_int(a) || (!b.empty() && !is_int(b)) || (!b.empty() && (b[0] == '-' || b[0] == '+')))
      throw bad();
    Integer den = 1;
    for (std::size_t i = 0; i < b.size(); ++i)
      den *= 10;
    bool neg = a[0] == '-';
    Integer whole(a), frac = b.empty() ? Integer(0) : Integer(b);
    Rational r = Rational(boost::multiprecision::abs(whole)) + Rational(frac, den);
    return neg ? -r : r;
  }
  if (!is_int(s))
    throw bad();
  return Rational(Integer(s));
}

} // namespace fei
