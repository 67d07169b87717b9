#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sofic/groups.hpp"
#include "sofic/perm.hpp"

namespace sofic
{

/// Symbolic description of <G_1, ..., G_k, t | t^k, b_i^t = a_{i+1}> with
/// indices mod k, where G_i is a copy of G on a_i, b_i and phi(b) = a.
struct HigPresentation
{
  std::size_t k = 4;
  Family family = Family::Z2;
  std::vector<std::string> generators; ///< a_0 ... a_{k-1}, plus t
  std::vector<std::string> relators;   ///< schema per copy, i taken mod k
};

/// Throws std::invalid_argument for k < 1.
HigPresentation make_presentation(std::size_t k, Family family);

/// The tuple in G^k with b^(a-exponent of g) in slot l-1, g in slot l and
/// a^(b-exponent of g) in slot l+1, identity elsewhere. Slots are 0-based and
/// taken mod k. Requires k >= 3. Throws std::domain_error for BS(1,m), whose
/// abelianization does not split off <a> x <b>.
std::vector<Element> mubar(Element const &g, std::int64_t l, std::size_t k, GroupSpec const &group);

/// Point (x, y, z, w) of F_p^4 has index x p^3 + y p^2 + z p + w.
using Quad = std::array<std::int64_t, 4>;
std::size_t encode_quad(Quad const &q, std::int64_t p);
Quad decode_quad(std::size_t idx, std::int64_t p);

/// The action of Hig_4(Z wr Z) on F_p^4 given by tables f, lambda: F_p -> F_p^*:
///   t: (x,y,z,w) -> (y, z, w, x)
///   a: (x,y,z,w) -> (x lambda(z), y, z, w + f(z))
///   b: (x,y,z,w) -> (x, y, z + f(y), w lambda(y))
///   c: (x,y,z,w) -> (x, y + f(x), z lambda(x), w)
///   d: (x,y,z,w) -> (x + f(w), y lambda(w), z, w)
struct ActionTable
{
  std::int64_t p = 3;
  std::vector<std::int64_t> f_table;
  std::vector<std::int64_t> lambda_table;
  Perm t, a, b, c, d;
};

bool is_prime(std::int64_t p);

/// Throws std::invalid_argument if p is not prime, p^4 exceeds 2^24, a table
/// has the wrong length or a value that is zero mod p.
ActionTable make_action(std::int64_t p, std::vector<std::int64_t> f_table,
                        std::vector<std::int64_t> lambda_table);

/// Uniform table F_p -> F_p^*.
std::vector<std::int64_t> random_table(std::int64_t p, std::uint64_t seed);

struct RelationCheck
{
  std::string name;
  bool pass = true;
  std::optional<Quad> witness; ///< a point moved by the relator, on failure
};

struct RelationReport
{
  std::int64_t p = 0;
  std::int64_t window = 0;
  bool t_order_ok = false;
  /// Image under x -> x^t of each of a, b, c, d ('?' when not among them).
  std::array<char, 4> t_conjugates{'?', '?', '?', '?'};
  bool t_cycle_ok = false; ///< x -> x^t is a 4-cycle on {a, b, c, d}
  std::vector<RelationCheck> checks;
  bool pass = false;
};

/// Rebuilds the generators from the tables and checks: stored perms match the
/// tables, t^4 = id, a^t equals the stored d, the t-conjugation cycle on
/// {a,b,c,d}, and for each generator g the commutators
/// [(g^t)^(g^i), (g^t)^(g^j)] = id for -I <= i < j <= I.
RelationReport verify_action(ActionTable const &act, std::int64_t window);

/// Nontrivial elements of ball(Z wr Z, depth) acting trivially when the lamp
/// generator goes to d = a^t and the shift generator to a. Depth 0 gives an
/// empty list; throws std::out_of_range when depth > cap.
std::vector<BallEntry> injectivity_probe(ActionTable const &act, int depth, int cap = 6);

} // namespace sofic
