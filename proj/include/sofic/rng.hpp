#pragma once

#include <cstdint>
#include <random>

#include "sofic/fraction.hpp"

namespace sofic
{

/// splitmix64 finalizer, used to derive independent per-task seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{ return mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632be59bd9b4e019ULL)); }

/// mt19937_64 plus bounded draws that do not depend on the standard library's
/// distribution implementations, so a seed means the same thing everywhere.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound)
  {
    std::uint64_t const limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t r;
    do r = engine_(); while (r >= limit);
    return r % bound;
  }

  /// Uniform in [0, bound) for an arbitrary-precision positive bound.
  BigInt below(BigInt const &bound);

private:
  std::mt19937_64 engine_;
};

} // namespace sofic
