#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sofic/groups.hpp"
#include "sofic/perm.hpp"

namespace sofic
{

struct ApproxParams
{
  std::int64_t n = 1;
  std::int64_t p = 1;
  std::int64_t q = 1;
  std::int64_t m = 2;

  friend bool operator==(ApproxParams const &, ApproxParams const &) = default;
};

/// Generator images of an explicit permutation representation psi of one of
/// the group families:
///
///   z2     on Z/n:      a: x -> x+p,           b: x -> x+q
///   heis   on (Z/n)^2:  a: (x,y) -> (x,y+1),   b: (x,y) -> (x+y,y)
///   bs     on Z/n:      a: x -> x+1,           b: x -> m^-1 x
///   zwrz   on Z/n:      a: x -> x+1,           b: x -> m^-1 x
///   metab  on Z/n:      a: x -> q^-1 (x+1),    b: x -> p^-1 x
///
/// The point (x,y) of (Z/n)^2 has index x*n + y.
///
/// closed_form is set when gen_a and gen_b are exactly the images above; eval
/// then uses the normal-form formulas. Conjugated or amplified specs keep the
/// family but evaluate by composing generator images along a word.
struct ApproxSpec
{
  Family family = Family::Z2;
  ApproxParams params;
  Perm gen_a;
  Perm gen_b;
  bool closed_form = true;

  std::size_t degree() const { return gen_a.degree(); }
  GroupSpec group() const { return GroupSpec{family, params.m}; }
  /// "Z/nZ" or "(Z/nZ)^2".
  std::string point_set() const;
};

/// Throws std::invalid_argument on n < 1 or a coprimality violation
/// (gcd(m,n) = 1 for bs and zwrz, gcd(p,n) = gcd(q,n) = 1 for metab).
ApproxSpec make_approx(Family family, ApproxParams const &params);

/// The spec with both generator images replaced by their block-diagonal
/// amplification to degree n.
ApproxSpec amplify_spec(ApproxSpec const &spec, std::size_t n);

/// The spec with generator images sigma^-1 psi(.) sigma.
ApproxSpec conjugate_spec(ApproxSpec const &spec, Perm const &sigma);

/// A word in a, b evaluating to x, read off its normal form.
GenWord normal_form_word(Element const &x);

/// psi(x). For closed-form specs this uses the explicit formulas, e.g.
/// psi(a^l b^u c^v)(x,y) = (x + u y - v, y + l) on (Z/n)^2 and
/// psi(g)(x) = m^-pow (x + t(m)) for the 2x2 matrix families.
Perm eval(ApproxSpec const &spec, Element const &x);

/// Product of generator images along w (left to right, i.e. composed so that
/// the rightmost letter acts first). Letters must be a or b.
Perm eval_word(ApproxSpec const &spec, GenWord const &w);

struct VerifyReport
{
  Fraction delta;
  Fraction worst_hom_defect{0};
  std::optional<std::pair<Element, Element>> hom_witness;
  Fraction worst_id_closeness{1};
  std::optional<Element> id_witness;
  std::size_t pairs_checked = 0;
  std::size_t elements_checked = 0;
  bool pass = false;
};

/// Checks d(psi(g)psi(h), psi(gh)) < delta for g, h, gh in S and
/// d(psi(g), id) > 1 - delta for g in S other than e, reporting exact worst
/// cases. Witness ties go to the lexicographically smallest element (pair).
/// Throws std::domain_error for free metabelian words; use verify_words.
VerifyReport verify(ApproxSpec const &spec, std::vector<Element> const &S, Fraction delta);

/// Free metabelian variant: words are asserted nontrivial by the caller; a
/// product pair is checked when the free reduction of gh is in the list.
VerifyReport verify_words(ApproxSpec const &spec, std::vector<GenWord> const &words, Fraction delta);

struct PolyCheck
{
  bool holds = true;
  bool via_fast_path = false;
  /// Coefficients t_0, t_1, ... of a nonzero t with n | t(m), when !holds.
  std::optional<std::vector<std::int64_t>> witness;
};

/// |m| > 2C+1 and n > |m|^(C+1).
bool poly_fast_path(std::int64_t n, std::int64_t m, std::int64_t C);

/// Whether n divides t(m) for no nonzero t of degree <= C with all |t_i| < C.
/// Exhaustive unless the fast path applies; throws std::out_of_range when the
/// exhaustive scan would exceed max_exhaustive_C.
PolyCheck check_poly_condition(std::int64_t n, std::int64_t m, std::int64_t C,
                               std::int64_t max_exhaustive_C = 5);

enum class BoundStatus { Ok, Violated, NotApplicable };
std::string_view to_string(BoundStatus s);

struct HeisFixedPoints
{
  std::size_t count = 0;
  BigInt bound;   ///< |lam| * n
  BoundStatus status = BoundStatus::Ok;
};

/// Exact fixed-point count of psi_n(a^lam b^mu c^nu) on (Z/n)^2 against the
/// |lam| n bound. lam = 0 is reported as NotApplicable. Throws when the element
/// acts trivially (all of lam, mu, nu divisible by n).
HeisFixedPoints heis_fixed_bound(std::int64_t n, std::int64_t lam, std::int64_t mu, std::int64_t nu);

/// 3 * max |exponent| over S: with p > Cq and n > Cp the Z^2 translation
/// approximation separates S from the identity.
std::int64_t z2_separation_constant(std::vector<Element> const &S);

/// max(2N+1, floor(1/delta + 1)) where N bounds |pow|, exponents and
/// coefficients of the Laurent normal forms in S.
std::int64_t wreath_separation_constant(std::vector<Element> const &S, Fraction delta);

// Modular helpers shared with the search code.
std::int64_t mod_reduce(BigInt const &v, std::int64_t n);
std::int64_t mod_inverse(std::int64_t a, std::int64_t n);
std::int64_t mod_pow(std::int64_t base, std::int64_t e, std::int64_t n);

} // namespace sofic
