#include "sofic/groups.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace sofic
{

std::string_view family_tag(Family f)
{
  switch (f) {
  case Family::Z2: return "z2";
  case Family::Heisenberg: return "heis";
  case Family::BaumslagSolitar: return "bs";
  case Family::Wreath: return "zwrz";
  case Family::Metabelian: return "metab";
  }
  return "?";
}

Family parse_family(std::string_view tag)
{
  for (Family f : {Family::Z2, Family::Heisenberg, Family::BaumslagSolitar, Family::Wreath,
                   Family::Metabelian})
    if (family_tag(f) == tag)
      return f;
  throw std::invalid_argument("unknown group family '" + std::string(tag) + "'");
}

// ---------------------------------------------------------------------------
// GenWord

GenWord GenWord::from_letters(std::vector<Letter> const &letters)
{
  GenWord w;
  for (Letter const &l : letters) {
    if (l.gen != 'a' && l.gen != 'b' && l.gen != 't')
      throw std::invalid_argument(std::string("invalid generator '") + l.gen + "'");
    if (l.exp == 0)
      continue;
    if (!w.letters_.empty() && w.letters_.back().gen == l.gen) {
      w.letters_.back().exp += l.exp;
      if (w.letters_.back().exp == 0)
        w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

GenWord GenWord::parse(std::string_view text)
{
  std::vector<Letter> letters;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
      ++i;
  };
  skip_space();
  if (text.substr(i) == "e" || text.substr(i) == "1")
    return {};
  while (i < text.size()) {
    char const gen = text[i++];
    if (gen != 'a' && gen != 'b' && gen != 't')
      throw std::invalid_argument("word: unexpected '" + std::string(1, gen) + "' in '" +
                                  std::string(text) + "'");
    std::int64_t exp = 1;
    if (i < text.size() && text[i] == '^')
      ++i;
    std::size_t j = i;
    if (j < text.size() && (text[j] == '-' || text[j] == '+'))
      ++j;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
      ++j;
    if (j > i) {
      std::string_view num = text.substr(i, j - i);
      if (num == "-" || num == "+")
        throw std::invalid_argument("word: dangling sign in '" + std::string(text) + "'");
      if (num.front() == '+')
        num.remove_prefix(1);
      std::from_chars(num.data(), num.data() + num.size(), exp);
      i = j;
    }
    letters.push_back({gen, exp});
    skip_space();
  }
  return from_letters(letters);
}

std::int64_t GenWord::length() const
{
  std::int64_t len = 0;
  for (auto const &l : letters_)
    len += l.exp < 0 ? -l.exp : l.exp;
  return len;
}

bool GenWord::uses(char gen) const
{
  return std::any_of(letters_.begin(), letters_.end(), [gen](Letter const &l) { return l.gen == gen; });
}

GenWord GenWord::inverse() const
{
  GenWord w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back({it->gen, -it->exp});
  return w;
}

GenWord operator*(GenWord const &x, GenWord const &y)
{
  std::vector<Letter> all(x.letters_);
  all.insert(all.end(), y.letters_.begin(), y.letters_.end());
  return GenWord::from_letters(all);
}

std::string GenWord::str() const
{
  if (letters_.empty())
    return "e";
  std::string out;
  for (auto const &l : letters_) {
    if (!out.empty())
      out += ' ';
    out += l.gen;
    if (l.exp != 1)
      out += "^" + std::to_string(l.exp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Element arithmetic

namespace
{

BigInt ipow(std::int64_t base, std::int64_t e)
{
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e));
}

/// num / m^e with e minimal.
void normalize_dyadic(std::int64_t m, BigInt &num, std::int64_t &e)
{
  if (num == 0) {
    e = 0;
    return;
  }
  while (e > 0 && num % m == 0) {
    num /= m;
    --e;
  }
}

/// (num / m^e) * m^s.
void scale_dyadic(std::int64_t m, BigInt &num, std::int64_t &e, std::int64_t s)
{
  if (s >= 0) {
    std::int64_t const absorbed = std::min(e, s);
    e -= absorbed;
    num *= ipow(m, s - absorbed);
  } else {
    e += -s;
  }
  normalize_dyadic(m, num, e);
}

BSElem bs_mul(BSElem const &x, BSElem const &y)
{
  if (x.m != y.m)
    throw std::invalid_argument("BS(1,m): parameter mismatch (" + std::to_string(x.m) + " vs " +
                                std::to_string(y.m) + ")");
  // [[1,l1],[0,M1]] [[1,l2],[0,M2]] = [[1, l2 + l1 M2], [0, M1 M2]]
  BigInt n1 = x.num;
  std::int64_t e1 = x.den_exp;
  scale_dyadic(x.m, n1, e1, y.pow);
  std::int64_t const e = std::max(e1, y.den_exp);
  BigInt num = n1 * ipow(x.m, e - e1) + y.num * ipow(x.m, e - y.den_exp);
  std::int64_t den_exp = e;
  normalize_dyadic(x.m, num, den_exp);
  return BSElem{x.m, std::move(num), den_exp, x.pow + y.pow};
}

BSElem bs_inverse(BSElem const &x)
{
  BigInt num = -x.num;
  std::int64_t e = x.den_exp;
  scale_dyadic(x.m, num, e, -x.pow);
  return BSElem{x.m, std::move(num), e, -x.pow};
}

WreathElem wreath_mul(WreathElem const &x, WreathElem const &y)
{
  // [[1,t1],[0,x^p1]] [[1,t2],[0,x^p2]] = [[1, t2 + t1 x^p2], [0, x^(p1+p2)]]
  WreathElem out{y.poly, x.pow + y.pow};
  for (auto const &[e, c] : x.poly) {
    BigInt &slot = out.poly[e + y.pow];
    slot += c;
    if (slot == 0)
      out.poly.erase(e + y.pow);
  }
  return out;
}

WreathElem wreath_inverse(WreathElem const &x)
{
  WreathElem out{{}, -x.pow};
  for (auto const &[e, c] : x.poly)
    out.poly.emplace(e - x.pow, -c);
  return out;
}

[[noreturn]] void family_mismatch()
{ throw std::invalid_argument("group product of elements from different families"); }

} // namespace

Family family_of(Element const &x)
{
  switch (x.index()) {
  case 0: return Family::Z2;
  case 1: return Family::Heisenberg;
  case 2: return Family::BaumslagSolitar;
  case 3: return Family::Wreath;
  default: return Family::Metabelian;
  }
}

Element identity(GroupSpec const &g)
{
  switch (g.family) {
  case Family::Z2: return Z2Elem{};
  case Family::Heisenberg: return HeisElem{};
  case Family::BaumslagSolitar:
    if (g.m > -2 && g.m < 2)
      throw std::invalid_argument("BS(1,m) requires |m| >= 2");
    return BSElem{g.m, 0, 0, 0};
  case Family::Wreath: return WreathElem{};
  case Family::Metabelian: return FreeWord{};
  }
  return Z2Elem{};
}

Element generator_power(GroupSpec const &g, char gen, std::int64_t exp)
{
  if (gen != 'a' && gen != 'b')
    throw std::invalid_argument(std::string("generator '") + gen + "' is not in the group " +
                                std::string(family_tag(g.family)));
  bool const is_a = gen == 'a';
  switch (g.family) {
  case Family::Z2:
    return is_a ? Z2Elem{exp, 0} : Z2Elem{0, exp};
  case Family::Heisenberg:
    return is_a ? HeisElem{exp, 0, 0} : HeisElem{0, exp, 0};
  case Family::BaumslagSolitar: {
    auto e = std::get<BSElem>(identity(g));
    if (is_a)
      e.num = exp;
    else
      e.pow = exp;
    return e;
  }
  case Family::Wreath: {
    WreathElem e;
    if (is_a) {
      if (exp != 0)
        e.poly.emplace(0, exp);
    } else {
      e.pow = exp;
    }
    return e;
  }
  case Family::Metabelian:
    return FreeWord{GenWord::from_letters({{gen, exp}})};
  }
  return Z2Elem{};
}

Element mul(Element const &x, Element const &y)
{
  if (x.index() != y.index())
    family_mismatch();
  return std::visit(
      [&y](auto const &lhs) -> Element {
        using T = std::decay_t<decltype(lhs)>;
        auto const &rhs = std::get<T>(y);
        if constexpr (std::is_same_v<T, Z2Elem>) {
          return Z2Elem{lhs.lam + rhs.lam, lhs.mu + rhs.mu};
        } else if constexpr (std::is_same_v<T, HeisElem>) {
          // b^mu a^lam = a^lam b^mu c^(-lam mu)
          return HeisElem{lhs.lam + rhs.lam, lhs.mu + rhs.mu, lhs.nu + rhs.nu - lhs.mu * rhs.lam};
        } else if constexpr (std::is_same_v<T, BSElem>) {
          return bs_mul(lhs, rhs);
        } else if constexpr (std::is_same_v<T, WreathElem>) {
          return wreath_mul(lhs, rhs);
        } else {
          return FreeWord{lhs.word * rhs.word};
        }
      },
      x);
}

Element inverse(Element const &x)
{
  return std::visit(
      [](auto const &e) -> Element {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Z2Elem>)
          return Z2Elem{-e.lam, -e.mu};
        else if constexpr (std::is_same_v<T, HeisElem>)
          return HeisElem{-e.lam, -e.mu, -e.mu * e.lam - e.nu};
        else if constexpr (std::is_same_v<T, BSElem>)
          return bs_inverse(e);
        else if constexpr (std::is_same_v<T, WreathElem>)
          return wreath_inverse(e);
        else
          return FreeWord{e.word.inverse()};
      },
      x);
}

Element eval_word(GenWord const &w, GroupSpec const &g)
{
  Element acc = identity(g);
  for (Letter const &l : w.letters())
    acc = mul(acc, generator_power(g, l.gen, l.exp));
  return acc;
}

bool is_trivial(Element const &x)
{
  return std::visit(
      [](auto const &e) -> bool {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Z2Elem>)
          return e.lam == 0 && e.mu == 0;
        else if constexpr (std::is_same_v<T, HeisElem>)
          return e.lam == 0 && e.mu == 0 && e.nu == 0;
        else if constexpr (std::is_same_v<T, BSElem>)
          return e.num == 0 && e.pow == 0;
        else if constexpr (std::is_same_v<T, WreathElem>)
          return e.poly.empty() && e.pow == 0;
        else
          throw std::domain_error("is_trivial: word problem in the free metabelian group is not supported");
      },
      x);
}

std::pair<BigInt, BigInt> abelianize(Element const &x)
{
  return std::visit(
      [](auto const &e) -> std::pair<BigInt, BigInt> {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Z2Elem> || std::is_same_v<T, HeisElem>) {
          return {e.lam, e.mu};
        } else if constexpr (std::is_same_v<T, BSElem>) {
          throw std::domain_error("BS(1,m) has no projection onto <a> x <b>");
        } else if constexpr (std::is_same_v<T, WreathElem>) {
          BigInt sum = 0;
          for (auto const &[exp, c] : e.poly)
            sum += c;
          return {sum, BigInt(e.pow)};
        } else {
          BigInt sa = 0, sb = 0;
          for (Letter const &l : e.word.letters())
            (l.gen == 'a' ? sa : sb) += l.exp;
          return {sa, sb};
        }
      },
      x);
}

std::string to_string(Element const &x)
{
  std::ostringstream os;
  std::visit(
      [&os](auto const &e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Z2Elem>) {
          os << "z2(" << e.lam << "," << e.mu << ")";
        } else if constexpr (std::is_same_v<T, HeisElem>) {
          os << "heis(" << e.lam << "," << e.mu << "," << e.nu << ")";
        } else if constexpr (std::is_same_v<T, BSElem>) {
          os << "bs" << e.m << "(" << e.num << "/" << e.m << "^" << e.den_exp << ",pow=" << e.pow << ")";
        } else if constexpr (std::is_same_v<T, WreathElem>) {
          os << "zwrz(";
          bool first = true;
          for (auto const &[exp, c] : e.poly) {
            os << (first ? "" : "+") << c << "x^" << exp;
            first = false;
          }
          if (first)
            os << "0";
          os << ",pow=" << e.pow << ")";
        } else {
          os << "metab(" << e.word.str() << ")";
        }
      },
      x);
  return os.str();
}

Ball ball(GroupSpec const &g, int radius)
{
  if (radius < 0)
    throw std::invalid_argument("ball: radius must be non-negative");
  bool const words_only = g.family == Family::Metabelian;
  Letter const steps[] = {{'a', 1}, {'a', -1}, {'b', 1}, {'b', -1}};

  std::set<Element> seen;
  std::vector<BallEntry> all;
  std::vector<std::size_t> frontier;

  all.push_back({identity(g), GenWord{}});
  seen.insert(all.front().element);
  frontier.push_back(0);

  for (int r = 1; r <= radius; ++r) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      for (Letter const &s : steps) {
        GenWord word = all[idx].word * GenWord::from_letters({s});
        Element elem = words_only ? Element{FreeWord{word}}
                                  : mul(all[idx].element, generator_power(g, s.gen, s.exp));
        if (seen.insert(elem).second) {
          next.push_back(all.size());
          all.push_back({std::move(elem), std::move(word)});
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end(),
            [](BallEntry const &x, BallEntry const &y) { return x.element < y.element; });
  return Ball{std::move(all), words_only};
}

BigInt max_normal_form_entry(Element const &x)
{
  auto babs = [](BigInt const &v) { return v < 0 ? BigInt(-v) : v; };
  return std::visit(
      [&babs](auto const &e) -> BigInt {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Z2Elem>) {
          return std::max(babs(e.lam), babs(e.mu));
        } else if constexpr (std::is_same_v<T, HeisElem>) {
          return std::max({babs(e.lam), babs(e.mu), babs(e.nu)});
        } else if constexpr (std::is_same_v<T, BSElem>) {
          return std::max({babs(e.num), BigInt(e.den_exp), babs(BigInt(e.pow))});
        } else if constexpr (std::is_same_v<T, WreathElem>) {
          BigInt best = babs(BigInt(e.pow));
          for (auto const &[exp, c] : e.poly)
            best = std::max({best, babs(c), babs(BigInt(exp))});
          return best;
        } else {
          BigInt best = 0;
          for (Letter const &l : e.word.letters())
            best = std::max(best, babs(BigInt(l.exp)));
          return best;
        }
      },
      x);
}

} // namespace sofic
