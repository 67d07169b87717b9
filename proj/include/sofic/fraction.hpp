#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sofic
{

using BigInt = boost::multiprecision::cpp_int;

/// Exact non-negative-denominator rational with 64-bit parts, always reduced.
/// Distances, thresholds and defects are carried as Fractions so that every
/// pass/fail decision is reproducible bit for bit.
class Fraction
{
public:
  constexpr Fraction() = default;
  Fraction(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Parses "3/10", "0.1", "1e-2" style decimals, or integers, exactly.
  static Fraction parse(std::string_view text);
  std::string str() const;

  friend Fraction operator+(Fraction const &x, Fraction const &y);
  friend Fraction operator-(Fraction const &x, Fraction const &y);

  friend bool operator==(Fraction const &x, Fraction const &y)
  { return x.num_ == y.num_ && x.den_ == y.den_; }

  friend std::strong_ordering operator<=>(Fraction const &x, Fraction const &y)
  {
    __int128 lhs = static_cast<__int128>(x.num_) * y.den_;
    __int128 rhs = static_cast<__int128>(y.num_) * x.den_;
    return lhs <=> rhs;
  }

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace sofic
