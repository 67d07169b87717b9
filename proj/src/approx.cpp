#include "sofic/approx.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sofic
{

// ---------------------------------------------------------------------------
// Modular arithmetic

std::int64_t mod_reduce(BigInt const &v, std::int64_t n)
{
  BigInt r = v % n;
  if (r < 0)
    r += n;
  return static_cast<std::int64_t>(r);
}

namespace
{

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n)
{ return static_cast<std::int64_t>(static_cast<__int128>(a) * b % n); }

std::int64_t posmod(std::int64_t a, std::int64_t n)
{
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t to_i64(BigInt const &v, char const *what)
{
  if (v > INT64_MAX || v < INT64_MIN)
    throw std::overflow_error(std::string(what) + ": exponent does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

} // namespace

std::int64_t mod_inverse(std::int64_t a, std::int64_t n)
{
  if (n == 1)
    return 0;
  std::int64_t old_r = posmod(a, n), r = n, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t const quot = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
  }
  if (old_r != 1)
    throw std::invalid_argument(std::to_string(a) + " is not invertible mod " + std::to_string(n));
  return posmod(old_s, n);
}

std::int64_t mod_pow(std::int64_t base, std::int64_t e, std::int64_t n)
{
  if (n == 1)
    return 0;
  std::int64_t b = e < 0 ? mod_inverse(base, n) : posmod(base, n);
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  std::int64_t result = 1;
  while (k > 0) {
    if (k & 1)
      result = mulmod(result, b, n);
    b = mulmod(b, b, n);
    k >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Construction

std::string ApproxSpec::point_set() const
{ return family == Family::Heisenberg ? "(Z/nZ)^2" : "Z/nZ"; }

namespace
{

void require_coprime(std::int64_t x, std::int64_t n, char const *name)
{
  if (std::gcd(x, n) != 1)
    throw std::invalid_argument(std::string(name) + " = " + std::to_string(x) +
                                " must be coprime to n = " + std::to_string(n));
}

Perm affine(std::int64_t n, std::int64_t mult, std::int64_t shift)
{
  // x -> mult * (x + shift)
  return Perm::from_function(static_cast<std::size_t>(n), [&](Point x) {
    return mulmod(mult, posmod(static_cast<std::int64_t>(x) + shift, n), n);
  });
}

Perm heis_action(std::int64_t n, std::int64_t lam, std::int64_t mu, std::int64_t nu)
{
  // (x, y) -> (x + mu y - nu, y + lam), index x*n + y
  auto const un = static_cast<std::size_t>(n);
  return Perm::from_function(un * un, [&](Point idx) {
    std::int64_t const x = idx / n, y = idx % n;
    std::int64_t const nx = posmod(x + mulmod(mu, y, n) - nu, n);
    std::int64_t const ny = posmod(y + lam, n);
    return nx * n + ny;
  });
}

} // namespace

ApproxSpec make_approx(Family family, ApproxParams const &params)
{
  std::int64_t const n = params.n;
  if (n < 1)
    throw std::invalid_argument("make_approx: n must be at least 1");
  ApproxSpec spec{family, params, {}, {}, true};
  switch (family) {
  case Family::Z2:
    spec.gen_a = affine(n, 1, posmod(params.p, n));
    spec.gen_b = affine(n, 1, posmod(params.q, n));
    break;
  case Family::Heisenberg:
    if (n > 46340)
      throw std::invalid_argument("make_approx: n^2 points exceed the supported range");
    spec.gen_a = heis_action(n, 1, 0, 0);
    spec.gen_b = heis_action(n, 0, 1, 0);
    break;
  case Family::BaumslagSolitar:
  case Family::Wreath:
    if (family == Family::BaumslagSolitar && params.m > -2 && params.m < 2)
      throw std::invalid_argument("make_approx: BS(1,m) requires |m| >= 2");
    require_coprime(params.m, n, "m");
    spec.gen_a = affine(n, 1, 1);
    spec.gen_b = affine(n, mod_inverse(params.m, n), 0);
    break;
  case Family::Metabelian:
    require_coprime(params.p, n, "p");
    require_coprime(params.q, n, "q");
    spec.gen_a = affine(n, mod_inverse(params.q, n), 1);
    spec.gen_b = affine(n, mod_inverse(params.p, n), 0);
    break;
  }
  return spec;
}

ApproxSpec amplify_spec(ApproxSpec const &spec, std::size_t n)
{
  ApproxSpec out = spec;
  out.gen_a = amplify(spec.gen_a, n);
  out.gen_b = amplify(spec.gen_b, n);
  out.closed_form = spec.closed_form && n == spec.degree();
  return out;
}

ApproxSpec conjugate_spec(ApproxSpec const &spec, Perm const &sigma)
{
  ApproxSpec out = spec;
  out.gen_a = conjugate(spec.gen_a, sigma);
  out.gen_b = conjugate(spec.gen_b, sigma);
  out.closed_form = spec.closed_form && out.gen_a == spec.gen_a && out.gen_b == spec.gen_b;
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

GenWord normal_form_word(Element const &x)
{
  return std::visit(
      [](auto const &e) -> GenWord {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Z2Elem>) {
          return GenWord::from_letters({{'a', to_i64(e.lam, "z2")}, {'b', to_i64(e.mu, "z2")}});
        } else if constexpr (std::is_same_v<T, HeisElem>) {
          // c^nu = [a^nu, b] = a^-nu b^-1 a^nu b
          std::int64_t const nu = to_i64(e.nu, "heis");
          return GenWord::from_letters({{'a', to_i64(e.lam, "heis")},
                                        {'b', to_i64(e.mu, "heis")},
                                        {'a', -nu},
                                        {'b', nu == 0 ? 0 : -1},
                                        {'a', nu},
                                        {'b', nu == 0 ? 0 : 1}});
        } else if constexpr (std::is_same_v<T, BSElem>) {
          // b^(pow+e) a^num b^-e
          return GenWord::from_letters(
              {{'b', e.pow + e.den_exp}, {'a', to_i64(e.num, "bs")}, {'b', -e.den_exp}});
        } else if constexpr (std::is_same_v<T, WreathElem>) {
          // b^pow * prod_i b^-i a^c_i b^i
          std::vector<Letter> letters{{'b', e.pow}};
          for (auto const &[i, c] : e.poly) {
            letters.push_back({'b', -i});
            letters.push_back({'a', to_i64(c, "zwrz")});
            letters.push_back({'b', i});
          }
          return GenWord::from_letters(letters);
        } else {
          return e.word;
        }
      },
      x);
}

Perm eval_word(ApproxSpec const &spec, GenWord const &w)
{
  Perm acc = Perm::identity(spec.degree());
  for (Letter const &l : w.letters()) {
    if (l.gen != 'a' && l.gen != 'b')
      throw std::invalid_argument("eval_word: generator '" + std::string(1, l.gen) +
                                  "' has no image in " + std::string(family_tag(spec.family)));
    acc = compose(acc, power(l.gen == 'a' ? spec.gen_a : spec.gen_b, l.exp));
  }
  return acc;
}

Perm eval(ApproxSpec const &spec, Element const &x)
{
  if (family_of(x) != spec.family)
    throw std::invalid_argument("eval: element of family " + std::string(family_tag(family_of(x))) +
                                " passed to a " + std::string(family_tag(spec.family)) + " approximation");
  if (auto const *bs = std::get_if<BSElem>(&x); bs && bs->m != spec.params.m)
    throw std::invalid_argument("eval: BS(1,m) parameter mismatch");
  if (!spec.closed_form || spec.family == Family::Metabelian)
    return eval_word(spec, normal_form_word(x));

  std::int64_t const n = spec.params.n;
  return std::visit(
      [&](auto const &e) -> Perm {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Z2Elem>) {
          std::int64_t const shift = posmod(
              mulmod(mod_reduce(e.lam, n), posmod(spec.params.p, n), n) +
                  mulmod(mod_reduce(e.mu, n), posmod(spec.params.q, n), n),
              n);
          return affine(n, 1, shift);
        } else if constexpr (std::is_same_v<T, HeisElem>) {
          return heis_action(n, mod_reduce(e.lam, n), mod_reduce(e.mu, n), mod_reduce(e.nu, n));
        } else if constexpr (std::is_same_v<T, BSElem>) {
          std::int64_t const m = spec.params.m;
          std::int64_t const shift = mulmod(mod_reduce(e.num, n), mod_pow(m, -e.den_exp, n), n);
          return affine(n, mod_pow(m, -e.pow, n), shift);
        } else if constexpr (std::is_same_v<T, WreathElem>) {
          std::int64_t const m = spec.params.m;
          std::int64_t shift = 0;
          for (auto const &[i, c] : e.poly)
            shift = posmod(shift + mulmod(mod_reduce(c, n), mod_pow(m, i, n), n), n);
          return affine(n, mod_pow(m, -e.pow, n), shift);
        } else {
          return eval_word(spec, e.word);
        }
      },
      x);
}

// ---------------------------------------------------------------------------
// Verification

namespace
{

Fraction identity_distance(Perm const &f)
{
  return Fraction(static_cast<std::int64_t>(f.degree() - fixed_point_count(f)),
                  static_cast<std::int64_t>(std::max<std::size_t>(f.degree(), 1)));
}

void finish(VerifyReport &r)
{
  Fraction const one(1);
  r.pass = r.worst_hom_defect < r.delta && r.worst_id_closeness > one - r.delta;
}

} // namespace

VerifyReport verify(ApproxSpec const &spec, std::vector<Element> const &S, Fraction delta)
{
  std::vector<Element> elems(S);
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  for (auto const &g : elems)
    if (std::holds_alternative<FreeWord>(g))
      throw std::domain_error("verify: triviality of free metabelian words is undecidable here; use verify_words");

  std::map<Element, std::size_t> index;
  std::vector<Perm> images;
  images.reserve(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    index.emplace(elems[i], i);
    images.push_back(eval(spec, elems[i]));
  }

  VerifyReport r;
  r.delta = delta;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      auto it = index.find(mul(elems[i], elems[j]));
      if (it == index.end())
        continue;
      ++r.pairs_checked;
      Fraction const d = hamming(compose(images[i], images[j]), images[it->second]).ratio();
      if (d > r.worst_hom_defect) {
        r.worst_hom_defect = d;
        r.hom_witness = std::make_pair(elems[i], elems[j]);
      }
    }
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (is_trivial(elems[i]))
      continue;
    ++r.elements_checked;
    Fraction const d = identity_distance(images[i]);
    if (!r.id_witness || d < r.worst_id_closeness) {
      r.worst_id_closeness = d;
      r.id_witness = elems[i];
    }
  }
  finish(r);
  return r;
}

VerifyReport verify_words(ApproxSpec const &spec, std::vector<GenWord> const &words, Fraction delta)
{
  std::vector<GenWord> ws(words);
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  std::map<GenWord, std::size_t> index;
  std::vector<Perm> images;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    index.emplace(ws[i], i);
    images.push_back(eval_word(spec, ws[i]));
  }

  VerifyReport r;
  r.delta = delta;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    for (std::size_t j = 0; j < ws.size(); ++j) {
      auto it = index.find(ws[i] * ws[j]);
      if (it == index.end())
        continue;
      ++r.pairs_checked;
      Fraction const d = hamming(compose(images[i], images[j]), images[it->second]).ratio();
      if (d > r.worst_hom_defect) {
        r.worst_hom_defect = d;
        r.hom_witness = std::make_pair(Element{FreeWord{ws[i]}}, Element{FreeWord{ws[j]}});
      }
    }
  }
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (ws[i].empty())
      continue;
    ++r.elements_checked;
    Fraction const d = identity_distance(images[i]);
    if (!r.id_witness || d < r.worst_id_closeness) {
      r.worst_id_closeness = d;
      r.id_witness = FreeWord{ws[i]};
    }
  }
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------
// Sufficient conditions

bool poly_fast_path(std::int64_t n, std::int64_t m, std::int64_t C)
{
  std::int64_t const am = m < 0 ? -m : m;
  if (C < 0 || am <= 2 * C + 1)
    return false;
  BigInt bound = 1;
  for (std::int64_t i = 0; i <= C; ++i)
    bound *= am;
  return BigInt(n) > bound;
}

PolyCheck check_poly_condition(std::int64_t n, std::int64_t m, std::int64_t C,
                               std::int64_t max_exhaustive_C)
{
  if (n < 1)
    throw std::invalid_argument("check_poly_condition: n must be positive");
  if (std::gcd(m, n) != 1)
    throw std::invalid_argument("check_poly_condition: m must be coprime to n");
  if (C <= 0)
    return PolyCheck{true, false, std::nullopt};
  if (poly_fast_path(n, m, C))
    return PolyCheck{true, true, std::nullopt};
  if (C > max_exhaustive_C)
    throw std::out_of_range("check_poly_condition: C = " + std::to_string(C) +
                            " exceeds the exhaustive cap " + std::to_string(max_exhaustive_C));

  // Degree by degree; within a degree, coefficient vectors in lexicographic
  // order of (t_d, t_{d-1}, ..., t_0) from -(C-1) upward.
  std::int64_t const mm = posmod(m, n);
  std::int64_t const lo = -(C - 1);
  for (std::int64_t d = 0; d <= C; ++d) {
    std::vector<std::int64_t> coef(static_cast<std::size_t>(d + 1), lo);
    for (;;) {
      if (coef[d] != 0) {
        std::int64_t acc = 0;
        for (std::int64_t i = d; i >= 0; --i)
          acc = posmod(mulmod(acc, mm, n) + coef[i], n);
        if (acc == 0)
          return PolyCheck{false, false, coef};
      }
      std::int64_t i = 0;
      while (i <= d && coef[i] == C - 1)
        coef[i++] = lo;
      if (i > d)
        break;
      ++coef[i];
    }
  }
  return PolyCheck{true, false, std::nullopt};
}

std::string_view to_string(BoundStatus s)
{
  switch (s) {
  case BoundStatus::Ok: return "ok";
  case BoundStatus::Violated: return "violated";
  case BoundStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

HeisFixedPoints heis_fixed_bound(std::int64_t n, std::int64_t lam, std::int64_t mu, std::int64_t nu)
{
  if (n < 1)
    throw std::invalid_argument("heis_fixed_bound: n must be positive");
  if (posmod(lam, n) == 0 && posmod(mu, n) == 0 && posmod(nu, n) == 0)
    throw std::invalid_argument("heis_fixed_bound: element acts trivially on (Z/n)^2");
  Perm const f = heis_action(n, posmod(lam, n), posmod(mu, n), posmod(nu, n));
  HeisFixedPoints r;
  r.count = fixed_point_count(f);
  r.bound = BigInt(lam < 0 ? -lam : lam) * n;
  if (lam == 0)
    r.status = BoundStatus::NotApplicable;
  else
    r.status = BigInt(r.count) <= r.bound ? BoundStatus::Ok : BoundStatus::Violated;
  return r;
}

std::int64_t z2_separation_constant(std::vector<Element> const &S)
{
  BigInt best = 0;
  for (auto const &s : S)
    best = std::max(best, max_normal_form_entry(s));
  return 3 * to_i64(best, "z2_separation_constant");
}

std::int64_t wreath_separation_constant(std::vector<Element> const &S, Fraction delta)
{
  BigInt N = 0;
  for (auto const &s : S)
    N = std::max(N, max_normal_form_entry(s));
  std::int64_t const n = to_i64(N, "wreath_separation_constant");
  // floor(1/delta + 1) = floor((den + num) / num)
  std::int64_t const inv = (delta.den() + delta.num()) / delta.num();
  return std::max(2 * n + 1, inv);
}

} // namespace sofic
