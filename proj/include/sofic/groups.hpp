#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "sofic/fraction.hpp"

namespace sofic
{

enum class Family { Z2, Heisenberg, BaumslagSolitar, Wreath, Metabelian };

/// Short tags used on the command line and in files: z2, heis, bs, zwrz, metab.
std::string_view family_tag(Family f);
Family parse_family(std::string_view tag);

/// A generator power; gen is one of 'a', 'b', 't'.
struct Letter
{
  char gen = 'a';
  std::int64_t exp = 1;

  friend bool operator==(Letter const &, Letter const &) = default;
  friend auto operator<=>(Letter const &, Letter const &) = default;
};

/// Freely reduced word in generator powers: no zero exponents and no two
/// adjacent letters on the same generator.
class GenWord
{
public:
  GenWord() = default;

  /// Reduces the input; throws on generators outside {a, b, t}.
  static GenWord from_letters(std::vector<Letter> const &letters);

  /// Accepts "a^2 b^-1 t", "a2b-1t", "ab" and the empty word "" or "e".
  static GenWord parse(std::string_view text);

  std::vector<Letter> const &letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::int64_t length() const;
  bool uses(char gen) const;

  GenWord inverse() const;
  friend GenWord operator*(GenWord const &x, GenWord const &y);

  std::string str() const;

  friend bool operator==(GenWord const &, GenWord const &) = default;
  friend auto operator<=>(GenWord const &, GenWord const &) = default;

private:
  std::vector<Letter> letters_;
};

/// a^lam b^mu in Z^2.
struct Z2Elem
{
  BigInt lam, mu;
  friend bool operator==(Z2Elem const &, Z2Elem const &) = default;
  friend bool operator<(Z2Elem const &x, Z2Elem const &y)
  { return std::tie(x.lam, x.mu) < std::tie(y.lam, y.mu); }
};

/// a^lam b^mu c^nu with c = [a,b] = a^-1 b^-1 a b central.
struct HeisElem
{
  BigInt lam, mu, nu;
  friend bool operator==(HeisElem const &, HeisElem const &) = default;
  friend bool operator<(HeisElem const &x, HeisElem const &y)
  { return std::tie(x.lam, x.mu, x.nu) < std::tie(y.lam, y.mu, y.nu); }
};

/// The matrix [[1, num * m^-den_exp], [0, m^pow]] in BS(1,m), with a = [[1,1],[0,1]]
/// and b = [[1,0],[0,m]]. den_exp is minimal: m does not divide num when it is positive.
struct BSElem
{
  std::int64_t m = 2;
  BigInt num;
  std::int64_t den_exp = 0;
  std::int64_t pow = 0;
  friend bool operator==(BSElem const &, BSElem const &) = default;
  friend bool operator<(BSElem const &x, BSElem const &y)
  { return std::tie(x.m, x.pow, x.den_exp, x.num) < std::tie(y.m, y.pow, y.den_exp, y.num); }
};

/// The matrix [[1, poly(x)], [0, x^pow]] in Z wr Z, with a = [[1,1],[0,1]] and
/// b = [[1,0],[0,x]]. poly is a Laurent polynomial without zero coefficients.
struct WreathElem
{
  std::map<std::int64_t, BigInt> poly;
  std::int64_t pow = 0;
  friend bool operator==(WreathElem const &, WreathElem const &) = default;
  friend bool operator<(WreathElem const &x, WreathElem const &y)
  { return std::tie(x.pow, x.poly) < std::tie(y.pow, y.poly); }
};

/// Element of the free metabelian group, kept as an unreduced-in-the-group
/// (but freely reduced) word over {a, b}.
struct FreeWord
{
  GenWord word;
  friend bool operator==(FreeWord const &, FreeWord const &) = default;
  friend bool operator<(FreeWord const &x, FreeWord const &y) { return x.word < y.word; }
};

using Element = std::variant<Z2Elem, HeisElem, BSElem, WreathElem, FreeWord>;

/// A group family together with its structural parameter (m for BS(1,m)).
struct GroupSpec
{
  Family family = Family::Z2;
  std::int64_t m = 2;
};

Family family_of(Element const &x);

Element identity(GroupSpec const &g);
/// gen in {'a','b'}; exp may be any integer.
Element generator_power(GroupSpec const &g, char gen, std::int64_t exp);

/// Group product x*y. Throws std::invalid_argument on a family or parameter mismatch.
Element mul(Element const &x, Element const &y);
Element inverse(Element const &x);

/// Left-to-right product of generator powers. Rejects 't' and anything else
/// outside {a, b}.
Element eval_word(GenWord const &w, GroupSpec const &g);

/// True iff x is the identity. Throws std::domain_error for FreeWord (the word
/// problem in the free metabelian group is not handled).
bool is_trivial(Element const &x);

/// Exponent sums of a and b: the abelianization Z^2 of every family except
/// BS(1,m), where it throws std::domain_error.
std::pair<BigInt, BigInt> abelianize(Element const &x);

std::string to_string(Element const &x);

struct BallEntry
{
  Element element;
  GenWord word; ///< a shortest word representing element
};

struct Ball
{
  std::vector<BallEntry> entries; ///< sorted by element order
  /// Set for the free metabelian group: entries are distinct freely reduced
  /// words, not distinct group elements.
  bool words_only = false;
};

/// All elements given by words of length <= radius over a^{+-1}, b^{+-1}.
Ball ball(GroupSpec const &g, int radius);

/// Largest absolute exponent or coefficient in the normal form, used to size
/// the separation constants in approx.hpp.
BigInt max_normal_form_entry(Element const &x);

} // namespace sofic
