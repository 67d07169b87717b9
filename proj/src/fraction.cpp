#include "sofic/fraction.hpp"
#include "sofic/rng.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace sofic
{

Fraction::Fraction(std::int64_t num, std::int64_t den)
{
  if (den == 0)
    throw std::invalid_argument("Fraction: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t const g = std::gcd(num < 0 ? -num : num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

Fraction operator+(Fraction const &x, Fraction const &y)
{
  __int128 num = static_cast<__int128>(x.num_) * y.den_ + static_cast<__int128>(y.num_) * x.den_;
  __int128 den = static_cast<__int128>(x.den_) * y.den_;
  __int128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a != 0) {
    num /= a;
    den /= a;
  }
  if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
    throw std::overflow_error("Fraction: overflow");
  return Fraction(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

Fraction operator-(Fraction const &x, Fraction const &y)
{ return x + Fraction(-y.num_, y.den_); }

namespace
{

std::int64_t parse_int(std::string_view s)
{
  std::int64_t v = 0;
  auto const *first = s.data();
  if (!s.empty() && s.front() == '+')
    ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || first == s.data() + s.size())
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  return v;
}

} // namespace

Fraction Fraction::parse(std::string_view text)
{
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return Fraction(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));

  std::int64_t exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    exp10 = parse_int(text.substr(e + 1));
    text = text.substr(0, e);
  }
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  bool seen_point = false;
  for (char c : text) {
    if (c == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("not a decimal: '" + std::string(text) + "'");
    digits.push_back(c);
    if (seen_point)
      --exp10;
  }
  if (digits.empty())
    throw std::invalid_argument("empty number");

  std::int64_t num = parse_int(digits);
  std::int64_t den = 1;
  for (; exp10 > 0; --exp10)
    num *= 10;
  for (; exp10 < 0; ++exp10)
    den *= 10;
  return Fraction(negative ? -num : num, den);
}

std::string Fraction::str() const
{
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

BigInt Rng::below(BigInt const &bound)
{
  if (bound <= 0)
    throw std::invalid_argument("Rng::below: bound must be positive");
  std::size_t const bits = msb(bound) + 1;
  std::size_t const words = (bits + 63) / 64;
  std::size_t const excess = words * 64 - bits;
  // Rejection sampling on the smallest power of two covering bound.
  for (;;) {
    BigInt r = 0;
    for (std::size_t i = 0; i < words; ++i) {
      r <<= 64;
      r += engine_();
    }
    r >>= excess;
    if (r < bound)
      return r;
  }
}

} // namespace sofic
