#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sofic/fraction.hpp"

namespace sofic
{

using Point = std::uint32_t;

/// A bijection of {0, ..., n-1}; images()[x] is the value at x.
///
/// Perm values are immutable once built. Every constructor that accepts raw
/// images validates bijectivity, so a Perm in hand is always a permutation.
class Perm
{
public:
  Perm() = default;

  static Perm identity(std::size_t n);

  /// Throws std::invalid_argument unless images is a bijection of [0, n).
  static Perm from_images(std::vector<Point> images);

  /// Builds x -> fn(x) for x in [0, n) and validates the result.
  template<typename F>
  static Perm from_function(std::size_t n, F &&fn)
  {
    std::vector<Point> images(n);
    for (std::size_t x = 0; x < n; ++x)
      images[x] = static_cast<Point>(fn(static_cast<Point>(x)));
    return from_images(std::move(images));
  }

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<Point const> images() const { return images_; }

  Perm inverse() const;
  bool is_identity() const;

  friend bool operator==(Perm const &, Perm const &) = default;
  /// Lexicographic on the image array; shorter degree first.
  friend std::strong_ordering operator<=>(Perm const &f, Perm const &g);

private:
  struct Unchecked {};
  Perm(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}

  std::vector<Point> images_;

  friend Perm compose(Perm const &f, Perm const &g);
  friend Perm project_to_order(Perm const &f, std::uint64_t k);
  friend Perm amplify(Perm const &f, std::size_t n);
  friend class PermBuilder;
};

/// Mutable scratch space for search code that must edit images in place.
/// freeze() re-validates.
class PermBuilder
{
public:
  explicit PermBuilder(Perm const &f) : images_(f.images_) {}
  explicit PermBuilder(std::vector<Point> images) : images_(std::move(images)) {}

  std::vector<Point> &images() { return images_; }
  Perm freeze() const { return Perm::from_images(images_); }

private:
  std::vector<Point> images_;
};

/// (f o g)(x) = f(g(x)). Throws on degree mismatch.
Perm compose(Perm const &f, Perm const &g);
inline Perm operator*(Perm const &f, Perm const &g) { return compose(f, g); }

/// f^e for any integer e (negative powers use the inverse).
Perm power(Perm const &f, std::int64_t e);

/// sigma^tau = tau^-1 o sigma o tau.
Perm conjugate(Perm const &sigma, Perm const &tau);

/// Normalized Hamming distance kept as an exact integer pair.
struct Distance
{
  std::size_t disagreements = 0;
  std::size_t n = 0;

  Fraction ratio() const;
  double value() const
  { return n == 0 ? 0.0 : static_cast<double>(disagreements) / static_cast<double>(n); }

  friend bool operator==(Distance const &, Distance const &) = default;
};

Distance hamming(Perm const &f, Perm const &g);
std::size_t fixed_point_count(Perm const &f);

using Cycle = std::vector<Point>;

/// Orbits of f, each listed in application order starting at its smallest
/// point; cycles are sorted by that smallest point.
std::vector<Cycle> cycles(Perm const &f);

bool order_divides(Perm const &f, std::uint64_t k);

/// Keeps every cycle whose length divides k and turns all other points into
/// fixed points.
Perm project_to_order(Perm const &f, std::uint64_t k);

/// Block-diagonal copy of f on floor(n/m) consecutive blocks, identity on the
/// remaining n mod m points.
Perm amplify(Perm const &f, std::size_t n);

/// Exact number of f in Sym(n) with f^k = id.
BigInt count_order_dividing(std::size_t n, std::uint64_t k);

/// The table a(0..n) behind count_order_dividing.
std::vector<BigInt> order_dividing_table(std::size_t n, std::uint64_t k);

/// Uniform element of {f in Sym(n) : f^k = id}, deterministic in seed.
Perm sample_order_k(std::size_t n, std::uint64_t k, std::uint64_t seed);

} // namespace sofic
