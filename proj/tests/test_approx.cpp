#include <doctest.h>

#include "oracles.hpp"
#include "sofic/approx.hpp"
#include "sofic/rng.hpp"

using namespace sofic;
using oracle::cpp_int;

namespace
{

GenWord random_word(Rng &rng, int len)
{
  std::vector<Letter> ls;
  for (int i = 0; i < len; ++i)
    ls.push_back({rng.below(2) ? 'a' : 'b', rng.below(2) ? 1 : -1});
  return GenWord::from_letters(ls);
}

/// psi by composing generator images letter by letter.
Perm by_letters(ApproxSpec const &spec, GenWord const &w)
{
  Perm acc = Perm::identity(spec.degree());
  for (auto const &l : w.letters())
    for (std::int64_t i = 0; i < std::abs(l.exp); ++i) {
      Perm const &g = l.gen == 'a' ? spec.gen_a : spec.gen_b;
      acc = compose(acc, l.exp > 0 ? g : g.inverse());
    }
  return acc;
}

Perm translation(std::size_t n, std::int64_t s)
{
  auto const nn = static_cast<std::int64_t>(n);
  return Perm::from_function(n, [&](Point x) { return ((x + s) % nn + nn) % nn; });
}

std::vector<Element> ball_elements(GroupSpec const &g, int L)
{
  std::vector<Element> out;
  for (auto const &e : ball(g, L).entries)
    out.push_back(e.element);
  return out;
}

} // namespace

TEST_CASE("generator images")
{
  ApproxSpec const z2 = make_approx(Family::Z2, {10, 2, 3, 2});
  CHECK(z2.gen_a == translation(10, 2));
  CHECK(z2.gen_b == translation(10, 3));
  CHECK(hamming(z2.gen_a, Perm::identity(10)).ratio() == Fraction(1));

  ApproxSpec const bs = make_approx(Family::BaumslagSolitar, {5, 1, 1, 2});
  CHECK(bs.gen_b == Perm::from_function(5, [](Point x) { return 3 * x % 5; }));
  CHECK(conjugate(bs.gen_a, bs.gen_b) == translation(5, 2));
  CHECK(conjugate(bs.gen_a, bs.gen_b) == eval(bs, generator_power(bs.group(), 'a', 2)));

  ApproxSpec const h = make_approx(Family::Heisenberg, {3, 1, 1, 2});
  CHECK(h.degree() == 9);
  CHECK(h.point_set() == "(Z/nZ)^2");
  Perm const c = eval(h, HeisElem{0, 0, 1});
  for (Point idx = 0; idx < 9; ++idx) {
    Point const x = idx / 3, y = idx % 3;
    CHECK(c(idx) == ((x + 2) % 3) * 3 + y);
  }
  CHECK(fixed_point_count(c) == 0);

  ApproxSpec const fm = make_approx(Family::Metabelian, {7, 2, 3, 2});
  // a: x -> 3^-1 (x+1) = 5(x+1), b: x -> 2^-1 x = 4x mod 7
  CHECK(fm.gen_a == Perm::from_function(7, [](Point x) { return 5 * (x + 1) % 7; }));
  CHECK(fm.gen_b == Perm::from_function(7, [](Point x) { return 4 * x % 7; }));
}

TEST_CASE("parameter checks")
{
  CHECK_THROWS_AS(make_approx(Family::Z2, {0, 1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_approx(Family::BaumslagSolitar, {10, 1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_approx(Family::Wreath, {9, 1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(make_approx(Family::Metabelian, {6, 2, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_approx(Family::Metabelian, {6, 1, 3, 2}), std::invalid_argument);
  CHECK_NOTHROW(make_approx(Family::Z2, {1, 1, 1, 2}));
}

TEST_CASE("closed formulas")
{
  ApproxSpec const w = make_approx(Family::Wreath, {5, 1, 1, 2});
  CHECK(eval(w, eval_word(GenWord::parse("b^-1 a b"), w.group())) == translation(5, 2));
  ApproxSpec const h = make_approx(Family::Heisenberg, {5, 1, 1, 2});
  Perm const a2 = eval(h, HeisElem{2, 0, 0});
  for (Point idx = 0; idx < 25; ++idx)
    CHECK(a2(idx) == (idx / 5) * 5 + (idx % 5 + 2) % 5);
  for (auto fam : {Family::Z2, Family::Heisenberg, Family::BaumslagSolitar, Family::Wreath, Family::Metabelian}) {
    ApproxSpec const s = make_approx(fam, {7, 2, 3, 2});
    CHECK(eval(s, identity(s.group())).is_identity());
  }
}

TEST_CASE("psi is a homomorphism for every family")
{
  Rng rng(17);
  struct Case
  {
    Family fam;
    ApproxParams params;
  };
  Case const cases[] = {{Family::Z2, {11, 3, 4, 2}},       {Family::Heisenberg, {6, 1, 1, 2}},
                        {Family::BaumslagSolitar, {9, 1, 1, 2}}, {Family::BaumslagSolitar, {7, 1, 1, -3}},
                        {Family::Wreath, {15, 1, 1, 2}},   {Family::Metabelian, {13, 2, 5, 2}}};
  for (auto const &c : cases) {
    ApproxSpec const spec = make_approx(c.fam, c.params);
    for (int i = 0; i < 100; ++i) {
      GenWord const u = random_word(rng, 9), v = random_word(rng, 9);
      Element const x = eval_word(u, spec.group()), y = eval_word(v, spec.group());
      CHECK(eval(spec, mul(x, y)) == compose(eval(spec, x), eval(spec, y)));
      CHECK(eval(spec, x) == by_letters(spec, u));
      CHECK(eval_word(normal_form_word(x), spec.group()) == x);
      CHECK(eval_word(spec, normal_form_word(x)) == eval(spec, x));
    }
  }
}

TEST_CASE("conjugated and amplified specs evaluate through words")
{
  Rng rng(4);
  ApproxSpec const spec = make_approx(Family::BaumslagSolitar, {9, 1, 1, 2});
  std::vector<Point> img(9);
  std::iota(img.begin(), img.end(), Point{0});
  std::swap(img[0], img[5]);
  std::swap(img[2], img[7]);
  Perm const sigma = Perm::from_images(img);
  ApproxSpec const conj = conjugate_spec(spec, sigma);
  CHECK_FALSE(conj.closed_form);
  ApproxSpec const amp = amplify_spec(spec, 20);
  CHECK_FALSE(amp.closed_form);
  for (int i = 0; i < 50; ++i) {
    Element const x = eval_word(random_word(rng, 8), spec.group());
    CHECK(eval(conj, x) == conjugate(eval(spec, x), sigma));
    CHECK(eval(amp, x) == amplify(eval(spec, x), 20));
  }
}

TEST_CASE("verify on concrete sets")
{
  GroupSpec const z2{Family::Z2, 2};
  ApproxSpec const s = make_approx(Family::Z2, {10, 2, 3, 2});
  // Every nontrivial word of length <= 3 moves all of Z/10.
  CHECK(verify(s, ball_elements(z2, 2), Fraction(1, 10)).pass);
  CHECK(verify(s, ball_elements(z2, 3), Fraction(1, 10)).pass);
  // a^2 b^2 is the first to act trivially (2*2 + 3*2 = 10).
  VerifyReport const r4 = verify(s, ball_elements(z2, 4), Fraction(1, 10));
  CHECK_FALSE(r4.pass);
  CHECK(r4.worst_hom_defect == Fraction(0));
  CHECK(r4.worst_id_closeness == Fraction(0));
  REQUIRE(r4.id_witness);
  CHECK(eval(s, *r4.id_witness).is_identity());
  VerifyReport const r5 = verify(s, ball_elements(z2, 5), Fraction(1, 10));
  CHECK_FALSE(r5.pass);
  CHECK(eval(s, generator_power(z2, 'a', 5)).is_identity());

  VerifyReport const good = verify(make_approx(Family::Z2, {101, 10, 1, 2}), ball_elements(z2, 2), Fraction(1, 10));
  CHECK(good.pass);
  CHECK(good.worst_hom_defect == Fraction(0));
  CHECK(good.pairs_checked > 0);

  GroupSpec const h{Family::Heisenberg, 2};
  VerifyReport const hr = verify(make_approx(Family::Heisenberg, {30, 1, 1, 2}), ball_elements(h, 2), Fraction(1, 5));
  CHECK(hr.pass);
  CHECK(hr.worst_id_closeness >= Fraction(28, 30));

  CHECK_THROWS_AS(verify(make_approx(Family::Metabelian, {7, 2, 3, 2}), {FreeWord{GenWord::parse("a")}}, Fraction(1, 2)),
                  std::domain_error);
}

TEST_CASE("verify_words for the free metabelian group")
{
  ApproxSpec const s = make_approx(Family::Metabelian, {101, 3, 5, 2});
  std::vector<GenWord> words;
  for (auto const &e : ball(s.group(), 2).entries)
    words.push_back(e.word);
  VerifyReport const r = verify_words(s, words, Fraction(1, 10));
  CHECK(r.worst_hom_defect == Fraction(0));
  CHECK(r.pairs_checked > 0);
  CHECK(r.elements_checked == words.size() - 1);
}

TEST_CASE("witness ties go to the smallest element")
{
  GroupSpec const z2{Family::Z2, 2};
  ApproxSpec const s = make_approx(Family::Z2, {101, 10, 1, 2});
  auto S = ball_elements(z2, 1);
  VerifyReport const r = verify(s, S, Fraction(1, 10));
  REQUIRE(r.id_witness);
  Element smallest = S[0];
  for (auto const &x : S)
    if (!is_trivial(x) && (is_trivial(smallest) || x < smallest))
      smallest = x;
  CHECK(*r.id_witness == smallest);
}

TEST_CASE("polynomial condition")
{
  // Exhaustive reference: all t with |t_i| < C, degree <= C.
  auto brute = [](std::int64_t n, std::int64_t m, std::int64_t C) {
    std::int64_t const width = 2 * C - 1;
    std::int64_t total = 1;
    for (int i = 0; i <= C; ++i)
      total *= width;
    for (std::int64_t code = 0; code < total; ++code) {
      std::int64_t v = code;
      cpp_int value = 0, mp = 1;
      bool nonzero = false;
      for (int i = 0; i <= C; ++i) {
        std::int64_t const t = v % width - (C - 1);
        v /= width;
        nonzero = nonzero || t != 0;
        value += t * mp;
        mp *= m;
      }
      if (nonzero && value % n == 0)
        return false;
    }
    return true;
  };
  PolyCheck const r = check_poly_condition(9, 2, 4);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  cpp_int v = 0, mp = 1;
  bool nonzero = false;
  for (auto t : *r.witness) {
    CHECK(std::abs(t) < 4);
    nonzero = nonzero || t != 0;
    v += t * mp;
    mp *= 2;
  }
  CHECK(nonzero);
  CHECK(r.witness->size() <= 5);
  CHECK(v % 9 == 0);

  PolyCheck const fast = check_poly_condition(1009, 10, 2);
  CHECK(fast.holds);
  CHECK(fast.via_fast_path);
  CHECK(poly_fast_path(1009, 10, 2));
  CHECK(check_poly_condition(9, 2, 0).holds);

  for (std::int64_t n = 2; n <= 60; ++n)
    for (std::int64_t m : {2, 3, -2, 5})
      if (std::gcd(n, std::abs(m)) == 1)
        for (std::int64_t C = 1; C <= 3; ++C)
          CHECK(check_poly_condition(n, m, C).holds == brute(n, m, C));
  CHECK_THROWS_AS(check_poly_condition(1000003, 2, 6), std::out_of_range);
  CHECK_THROWS_AS(check_poly_condition(10, 2, 2), std::invalid_argument);
}

TEST_CASE("Heisenberg fixed points")
{
  auto const a = heis_fixed_bound(5, 0, 0, 1);
  CHECK(a.count == 0);
  CHECK(a.status == BoundStatus::NotApplicable);
  auto const b = heis_fixed_bound(5, 1, 0, 0);
  CHECK(b.count == 0);
  CHECK(b.status == BoundStatus::Ok);
  CHECK(b.bound == 5);
  auto const c = heis_fixed_bound(6, 0, 2, 0);
  CHECK(c.count == 12);
  CHECK(c.status == BoundStatus::NotApplicable);
  CHECK_THROWS_AS(heis_fixed_bound(5, 5, 0, -10), std::invalid_argument);
}

TEST_CASE("Z^2 separation constant makes verify pass")
{
  GroupSpec const z2{Family::Z2, 2};
  for (int L = 1; L <= 3; ++L) {
    auto const S = ball_elements(z2, L);
    std::int64_t const C = z2_separation_constant(S);
    CHECK(C == 3 * L);
    for (std::int64_t q = 1; q <= 3; ++q)
      for (std::int64_t p = C * q + 1; p <= C * q + 3; ++p)
        for (std::int64_t n = C * p + 1; n <= C * p + 4; ++n)
          CHECK(verify(make_approx(Family::Z2, {n, p, q, 2}), S, Fraction(1, 10)).pass);
  }
}

TEST_CASE("Z wr Z: the polynomial condition implies verify")
{
  // With |m| < C the polynomial x - m is always a witness, so the condition
  // needs |m| >= C; for m = 5 and C = 5 it first holds beyond 4 (5^6-1)/4.
  GroupSpec const wr{Family::Wreath, 2};
  std::vector<std::int64_t> moduli;
  for (std::int64_t n = 5; n <= 400; ++n)
    moduli.push_back(n);
  for (std::int64_t n = 15620; n <= 15632; ++n)
    moduli.push_back(n);
  for (int L = 1; L <= 2; ++L) {
    auto const S = ball_elements(wr, L);
    Fraction const delta = L == 1 ? Fraction(1, 2) : Fraction(1, 4);
    std::int64_t const C = wreath_separation_constant(S, delta);
    CHECK(C == (L == 1 ? 3 : 5));
    int held = 0;
    for (std::int64_t m : {5, 7}) {
      for (std::int64_t n : moduli) {
        if (std::gcd(n, m) != 1 || !check_poly_condition(n, m, C).holds)
          continue;
        ++held;
        CHECK(verify(make_approx(Family::Wreath, {n, 1, 1, m}), S, delta).pass);
      }
    }
    CHECK(held > 0);
  }
}

TEST_CASE("amplified approximations degrade by 1/(q+1)")
{
  GroupSpec const z2{Family::Z2, 2};
  auto const S = ball_elements(z2, 2);
  ApproxSpec const base = make_approx(Family::Z2, {31, 7, 1, 2});
  Fraction const eta(1, 10);
  REQUIRE(verify(base, S, eta).pass);
  for (std::size_t n : {31u, 45u, 62u, 100u, 129u}) {
    std::int64_t const q = static_cast<std::int64_t>(n / 31);
    CHECK(verify(amplify_spec(base, n), S, eta + Fraction(1, q + 1)).pass);
  }
}

TEST_CASE("modular helpers")
{
  CHECK(mod_inverse(2, 5) == 3);
  CHECK(mod_inverse(-2, 7) == 3);
  CHECK_THROWS_AS(mod_inverse(2, 4), std::invalid_argument);
  CHECK(mod_pow(5, 4, 13) == 1);
  CHECK(mod_pow(2, -1, 5) == 3);
  CHECK(mod_reduce(BigInt(-1), 7) == 6);
}
