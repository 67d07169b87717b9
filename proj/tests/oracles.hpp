// Independent reference implementations used to freeze expected values.
// Nothing here calls the library code it is compared against.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle
{

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using Images = std::vector<std::uint32_t>;

/// Every permutation of {0..n-1} in lexicographic order.
inline std::vector<Images> all_perms(std::size_t n)
{
  Images p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<Images> out;
  do out.push_back(p); while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline Images compose(Images const &f, Images const &g)
{
  Images out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x)
    out[x] = f[g[x]];
  return out;
}

inline bool is_identity_after(Images const &f, std::uint64_t k)
{
  // Apply f k times to every point.
  for (std::size_t x = 0; x < f.size(); ++x) {
    std::uint32_t y = static_cast<std::uint32_t>(x);
    for (std::uint64_t i = 0; i < k; ++i)
      y = f[y];
    if (y != x)
      return false;
  }
  return true;
}

inline std::uint64_t count_order_dividing(std::size_t n, std::uint64_t k)
{
  std::uint64_t c = 0;
  for (auto const &p : all_perms(n))
    c += is_identity_after(p, k);
  return c;
}

/// Exhaustive optimum of #{x : f(alpha x) = beta(f x)} over f^k = id, with the
/// lexicographically smallest maximizer.
inline std::pair<std::size_t, Images> best_conjugator(Images const &alpha, Images const &beta, std::uint64_t k)
{
  std::size_t best = 0;
  Images arg;
  for (auto const &f : all_perms(alpha.size())) {
    if (!is_identity_after(f, k))
      continue;
    std::size_t s = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
      s += f[alpha[x]] == beta[f[x]];
    if (arg.empty() || s > best) {
      best = s;
      arg = f;
    }
  }
  return {best, arg};
}

// --- Matrix models of the groups -----------------------------------------

/// 3x3 upper unitriangular integer matrices: a = E + e12, b = E + e23.
struct Heis3
{
  std::array<std::array<cpp_int, 3>, 3> m{};
  static Heis3 identity()
  {
    Heis3 h;
    for (int i = 0; i < 3; ++i)
      h.m[i][i] = 1;
    return h;
  }
  friend Heis3 operator*(Heis3 const &x, Heis3 const &y)
  {
    Heis3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          r.m[i][j] += x.m[i][l] * y.m[l][j];
    return r;
  }
  friend bool operator==(Heis3 const &, Heis3 const &) = default;
};

inline Heis3 heis_gen(char g, int sign)
{
  Heis3 h = Heis3::identity();
  (g == 'a' ? h.m[0][1] : h.m[1][2]) = sign;
  return h;
}

/// 2x2 rational matrices [[1, t], [0, s]].
struct Affine
{
  cpp_rational t = 0, s = 1;
  friend Affine operator*(Affine const &x, Affine const &y)
  { return Affine{y.t + x.t * y.s, x.s * y.s}; }
  friend bool operator==(Affine const &, Affine const &) = default;
};

inline Affine bs_gen(char g, int sign, std::int64_t m)
{
  if (g == 'a')
    return Affine{cpp_rational(sign), 1};
  return Affine{0, sign > 0 ? cpp_rational(m) : cpp_rational(1) / m};
}

/// [[1, poly(x)], [0, x^pow]] over Z[x, 1/x], with plain map-based polynomials.
struct Laurent
{
  std::map<std::int64_t, cpp_int> poly;
  std::int64_t pow = 0;
  friend Laurent operator*(Laurent const &x, Laurent const &y)
  {
    Laurent r;
    r.pow = x.pow + y.pow;
    r.poly = y.poly;
    for (auto const &[e, c] : x.poly)
      r.poly[e + y.pow] += c;
    for (auto it = r.poly.begin(); it != r.poly.end();)
      it = it->second == 0 ? r.poly.erase(it) : std::next(it);
    return r;
  }
  friend bool operator==(Laurent const &, Laurent const &) = default;
};

inline Laurent wreath_gen(char g, int sign)
{
  Laurent l;
  if (g == 'a')
    l.poly[0] = sign;
  else
    l.pow = sign;
  return l;
}

/// Whether a word over a, b lies in the second derived subgroup of F_2: the
/// lattice path it traces in Z^2 is closed and crosses every edge equally
/// often in both directions.
inline bool in_second_derived(std::vector<std::pair<char, int>> const &unit_steps)
{
  std::map<std::array<std::int64_t, 3>, std::int64_t> flow;
  std::int64_t x = 0, y = 0;
  for (auto const &[g, s] : unit_steps) {
    if (g == 'a') {
      std::int64_t const lo = s > 0 ? x : x - 1;
      flow[{0, lo, y}] += s;
      x += s;
    } else {
      std::int64_t const lo = s > 0 ? y : y - 1;
      flow[{1, x, lo}] += s;
      y += s;
    }
  }
  if (x != 0 || y != 0)
    return false;
  for (auto const &[e, v] : flow)
    if (v != 0)
      return false;
  return true;
}

} // namespace oracle
