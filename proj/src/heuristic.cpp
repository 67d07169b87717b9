#include "sofic/heuristic.hpp"
#include "sofic/perm.hpp"

#include <stdexcept>
#include <string>

namespace sofic
{

namespace
{

Real to_real(Fraction const &f) { return Real(f.num()) / Real(f.den()); }

} // namespace

Real log_factorial(std::size_t n)
{
  Real acc = 0;
  for (std::size_t i = 2; i <= n; ++i)
    acc += boost::multiprecision::log(Real(i));
  return acc;
}

HeuristicReport heuristic_report(std::size_t n, std::uint64_t k, Fraction eps, Fraction eps_prime, std::size_t cap)
{
  if (n < 1)
    throw std::invalid_argument("heuristic: n must be at least 1");
  if (k < 2)
    throw std::invalid_argument("heuristic: k must be at least 2");
  if (eps < Fraction(0) || eps_prime < Fraction(0))
    throw std::invalid_argument("heuristic: eps and eps' must be non-negative");
  if (n > cap)
    throw std::out_of_range("heuristic: n = " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));

  HeuristicReport r;
  r.n = n;
  r.k = k;
  r.eps = eps;
  r.eps_prime = eps_prime;
  r.count = count_order_dividing(n, k);

  Real const log_count = boost::multiprecision::log(Real(r.count));
  Real const log_fact = log_factorial(n);
  Real const n_log_n = Real(n) * boost::multiprecision::log(Real(n));
  Fraction const coef = eps + eps + eps_prime;

  r.log_P = log_count - log_fact;
  r.log_K = to_real(coef) * n_log_n;
  r.log_PK = r.log_P + r.log_K;
  r.ratio = n == 1 ? Real(1) : log_count / log_fact;
  if (k == 4) {
    r.k4_coefficient = coef - Fraction(1, 4);
    r.k4_exponent = to_real(*r.k4_coefficient) * n_log_n;
  }
  return r;
}

} // namespace sofic
