#pragma once

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sofic/fraction.hpp"

namespace sofic
{

/// 200-bit binary floating point for the logarithms below.
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>>;

struct HeuristicReport
{
  std::size_t n = 1;
  std::uint64_t k = 2;
  Fraction eps;
  Fraction eps_prime;
  BigInt count;        ///< permutations of order dividing k in Sym(n)
  Real log_P;          ///< ln(count / n!)
  Real log_K;          ///< (2 eps + eps') n ln n
  Real log_PK;         ///< log_P + log_K
  Real ratio;          ///< ln(count) / ln(n!), 1 at n = 1
  /// For k = 4: 2 eps + eps' - 1/4 and that coefficient times n ln n.
  std::optional<Fraction> k4_coefficient;
  std::optional<Real> k4_exponent;
};

/// Throws std::invalid_argument for n < 1, k < 2 or negative eps, and
/// std::out_of_range for n > cap.
HeuristicReport heuristic_report(std::size_t n, std::uint64_t k, Fraction eps, Fraction eps_prime,
                                 std::size_t cap = 5000);

/// ln(n!) as a sum of logarithms.
Real log_factorial(std::size_t n);

} // namespace sofic
