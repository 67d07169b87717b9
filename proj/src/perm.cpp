#include "sofic/perm.hpp"
#include "sofic/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sofic
{

namespace
{

void require_same_degree(Perm const &f, Perm const &g, char const *what)
{
  if (f.degree() != g.degree())
    throw std::invalid_argument(std::string(what) + ": degree mismatch (" +
                                std::to_string(f.degree()) + " vs " +
                                std::to_string(g.degree()) + ")");
}

std::vector<std::uint64_t> divisors_up_to(std::uint64_t k, std::size_t limit)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= k && d <= limit; ++d)
    if (k % d == 0)
      out.push_back(d);
  return out;
}

} // namespace

Perm Perm::identity(std::size_t n)
{
  std::vector<Point> images(n);
  for (std::size_t x = 0; x < n; ++x)
    images[x] = static_cast<Point>(x);
  return Perm(std::move(images), Unchecked{});
}

Perm Perm::from_images(std::vector<Point> images)
{
  std::vector<bool> seen(images.size(), false);
  for (std::size_t x = 0; x < images.size(); ++x) {
    Point const y = images[x];
    if (y >= images.size())
      throw std::invalid_argument("Perm: image " + std::to_string(y) + " out of range for degree " +
                                  std::to_string(images.size()));
    if (seen[y])
      throw std::invalid_argument("Perm: image " + std::to_string(y) + " repeated");
    seen[y] = true;
  }
  return Perm(std::move(images), Unchecked{});
}

Perm Perm::inverse() const
{
  std::vector<Point> inv(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x)
    inv[images_[x]] = static_cast<Point>(x);
  return Perm(std::move(inv), Unchecked{});
}

bool Perm::is_identity() const
{
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x)
      return false;
  return true;
}

std::strong_ordering operator<=>(Perm const &f, Perm const &g)
{
  if (auto c = f.degree() <=> g.degree(); c != 0)
    return c;
  return std::lexicographical_compare_three_way(f.images_.begin(), f.images_.end(),
                                                g.images_.begin(), g.images_.end());
}

Perm compose(Perm const &f, Perm const &g)
{
  require_same_degree(f, g, "compose");
  std::vector<Point> out(g.images_.size());
  for (std::size_t x = 0; x < out.size(); ++x)
    out[x] = f.images_[g.images_[x]];
  return Perm(std::move(out), Perm::Unchecked{});
}

Perm power(Perm const &f, std::int64_t e)
{
  Perm base = e < 0 ? f.inverse() : f;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  Perm result = Perm::identity(f.degree());
  while (k > 0) {
    if (k & 1)
      result = compose(result, base);
    k >>= 1;
    if (k > 0)
      base = compose(base, base);
  }
  return result;
}

Perm conjugate(Perm const &sigma, Perm const &tau)
{ return compose(compose(tau.inverse(), sigma), tau); }

Fraction Distance::ratio() const
{
  if (n == 0)
    return Fraction(0);
  return Fraction(static_cast<std::int64_t>(disagreements), static_cast<std::int64_t>(n));
}

Distance hamming(Perm const &f, Perm const &g)
{
  require_same_degree(f, g, "hamming");
  Distance d{0, f.degree()};
  auto const a = f.images(), b = g.images();
  for (std::size_t x = 0; x < a.size(); ++x)
    d.disagreements += a[x] != b[x];
  return d;
}

std::size_t fixed_point_count(Perm const &f)
{
  std::size_t count = 0;
  for (std::size_t x = 0; x < f.degree(); ++x)
    count += f(static_cast<Point>(x)) == x;
  return count;
}

std::vector<Cycle> cycles(Perm const &f)
{
  std::vector<Cycle> out;
  std::vector<bool> seen(f.degree(), false);
  for (std::size_t start = 0; start < f.degree(); ++start) {
    if (seen[start])
      continue;
    Cycle c;
    for (Point x = static_cast<Point>(start); !seen[x]; x = f(x)) {
      seen[x] = true;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool order_divides(Perm const &f, std::uint64_t k)
{
  if (k == 0)
    throw std::invalid_argument("order_divides: k must be positive");
  std::vector<bool> seen(f.degree(), false);
  for (std::size_t start = 0; start < f.degree(); ++start) {
    if (seen[start])
      continue;
    std::uint64_t len = 0;
    for (Point x = static_cast<Point>(start); !seen[x]; x = f(x)) {
      seen[x] = true;
      ++len;
    }
    if (k % len != 0)
      return false;
  }
  return true;
}

Perm project_to_order(Perm const &f, std::uint64_t k)
{
  if (k == 0)
    throw std::invalid_argument("project_to_order: k must be positive");
  std::vector<Point> out(f.images_);
  for (auto const &c : cycles(f))
    if (k % c.size() != 0)
      for (Point x : c)
        out[x] = x;
  return Perm(std::move(out), Perm::Unchecked{});
}

Perm amplify(Perm const &f, std::size_t n)
{
  std::size_t const m = f.degree();
  if (m == 0)
    throw std::invalid_argument("amplify: empty permutation");
  if (n < m)
    throw std::invalid_argument("amplify: target degree " + std::to_string(n) +
                                " is below source degree " + std::to_string(m));
  std::size_t const q = n / m;
  std::vector<Point> out(n);
  for (std::size_t block = 0; block < q; ++block)
    for (std::size_t x = 0; x < m; ++x)
      out[block * m + x] = static_cast<Point>(block * m + f.images_[x]);
  for (std::size_t x = q * m; x < n; ++x)
    out[x] = static_cast<Point>(x);
  return Perm(std::move(out), Perm::Unchecked{});
}

std::vector<BigInt> order_dividing_table(std::size_t n, std::uint64_t k)
{
  if (k == 0)
    throw std::invalid_argument("count_order_dividing: k must be positive");
  auto const divs = divisors_up_to(k, n);
  // a(j) = sum over d | k of C(j-1, d-1) (d-1)! a(j-d): choose the cycle
  // through a distinguished point.
  std::vector<BigInt> a(n + 1);
  a[0] = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    BigInt total = 0;
    for (std::uint64_t d : divs) {
      if (d > j)
        break;
      BigInt term = a[j - d];
      for (std::uint64_t i = 1; i < d; ++i)
        term *= (j - i);
      total += term;
    }
    a[j] = std::move(total);
  }
  return a;
}

BigInt count_order_dividing(std::size_t n, std::uint64_t k)
{ return order_dividing_table(n, k)[n]; }

Perm sample_order_k(std::size_t n, std::uint64_t k, std::uint64_t seed)
{
  auto const a = order_dividing_table(n, k);
  auto const divs = divisors_up_to(k, n);
  Rng rng(seed);

  std::vector<Point> rest(n);
  for (std::size_t x = 0; x < n; ++x)
    rest[x] = static_cast<Point>(x);
  std::vector<Point> images(n);

  while (!rest.empty()) {
    std::size_t const m = rest.size();
    // Length of the cycle through rest[0], weighted by the number of
    // completions: C(m-1, d-1) (d-1)! a(m-d).
    BigInt r = rng.below(a[m]);
    std::uint64_t len = 1;
    for (std::uint64_t d : divs) {
      if (d > m)
        break;
      BigInt w = a[m - d];
      for (std::uint64_t i = 1; i < d; ++i)
        w *= (m - i);
      if (r < w) {
        len = d;
        break;
      }
      r -= w;
    }
    // Ordered uniform choice of the other len-1 cycle members.
    for (std::size_t i = 1; i < len; ++i) {
      std::size_t const j = i + static_cast<std::size_t>(rng.below(m - i));
      std::swap(rest[i], rest[j]);
    }
    for (std::size_t i = 0; i < len; ++i)
      images[rest[i]] = rest[(i + 1) % len];
    rest.erase(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(len));
  }
  return Perm::from_images(std::move(images));
}

} // namespace sofic
