#include "sofic/higman.hpp"
#include "sofic/rng.hpp"

#include <stdexcept>

namespace sofic
{

HigPresentation make_presentation(std::size_t k, Family family)
{
  if (k < 1)
    throw std::invalid_argument("make_presentation: k must be positive");
  HigPresentation h;
  h.k = k;
  h.family = family;
  for (std::size_t i = 0; i < k; ++i)
    h.generators.push_back("a_" + std::to_string(i));
  h.generators.push_back("t");

  // Copy i is generated by a_i and b_i = a_{i+1}.
  switch (family) {
  case Family::Z2:
    h.relators.push_back("[a_i, a_{i+1}]");
    break;
  case Family::Heisenberg:
    h.relators.push_back("[a_i, [a_i, a_{i+1}]]");
    h.relators.push_back("[a_{i+1}, [a_i, a_{i+1}]]");
    break;
  case Family::BaumslagSolitar:
    h.relators.push_back("a_{i+1}^-1 a_i a_{i+1} = a_i^m");
    break;
  case Family::Wreath:
    h.relators.push_back("[a_i, a_{i+1}^-j a_i a_{i+1}^j] for all j");
    break;
  case Family::Metabelian:
    h.relators.push_back("[[u, v], [w, z]] for all u, v, w, z in copy i");
    break;
  }
  h.relators.push_back("t^" + std::to_string(k));
  h.relators.push_back("t^-1 a_i t = a_{i+1}");
  return h;
}

std::vector<Element> mubar(Element const &g, std::int64_t l, std::size_t k, GroupSpec const &group)
{
  if (k < 3)
    throw std::invalid_argument("mubar: k must be at least 3");
  if (family_of(g) != group.family)
    throw std::invalid_argument("mubar: element does not belong to the group");
  if (group.family == Family::BaumslagSolitar)
    throw std::domain_error("mubar: BS(1,m) has no projection onto <a> x <b>");
  auto const [lam, mu] = abelianize(g);
  auto const kk = static_cast<std::int64_t>(k);
  auto slot = [kk](std::int64_t s) { return static_cast<std::size_t>(((s % kk) + kk) % kk); };

  std::vector<Element> out(k, identity(group));
  out[slot(l - 1)] = generator_power(group, 'b', static_cast<std::int64_t>(lam));
  out[slot(l)] = g;
  out[slot(l + 1)] = generator_power(group, 'a', static_cast<std::int64_t>(mu));
  return out;
}

std::size_t encode_quad(Quad const &q, std::int64_t p)
{ return static_cast<std::size_t>(((q[0] * p + q[1]) * p + q[2]) * p + q[3]); }

Quad decode_quad(std::size_t idx, std::int64_t p)
{
  auto i = static_cast<std::int64_t>(idx);
  Quad q;
  for (int c = 3; c >= 0; --c) {
    q[c] = i % p;
    i /= p;
  }
  return q;
}

bool is_prime(std::int64_t p)
{
  if (p < 2)
    return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

namespace
{

struct Generators
{
  Perm t, a, b, c, d;
};

Generators build(std::int64_t p, std::vector<std::int64_t> const &f, std::vector<std::int64_t> const &lam)
{
  std::size_t const size = static_cast<std::size_t>(p * p * p * p);
  auto md = [p](std::int64_t v) { return ((v % p) + p) % p; };
  auto F = [&](std::int64_t v) { return md(f[v]); };
  auto L = [&](std::int64_t v) { return md(lam[v]); };
  auto make = [&](auto &&rule) {
    return Perm::from_function(size, [&](Point idx) {
      Quad const q = decode_quad(idx, p);
      Quad r = rule(q[0], q[1], q[2], q[3]);
      for (auto &v : r)
        v = md(v);
      return encode_quad(r, p);
    });
  };
  Generators g;
  g.t = make([](auto x, auto y, auto z, auto w) { return Quad{y, z, w, x}; });
  g.a = make([&](auto x, auto y, auto z, auto w) { return Quad{x * L(z), y, z, w + F(z)}; });
  g.b = make([&](auto x, auto y, auto z, auto w) { return Quad{x, y, z + F(y), w * L(y)}; });
  g.c = make([&](auto x, auto y, auto z, auto w) { return Quad{x, y + F(x), z * L(x), w}; });
  g.d = make([&](auto x, auto y, auto z, auto w) { return Quad{x + F(w), y * L(w), z, w}; });
  return g;
}

std::optional<Point> moved_point(Perm const &f)
{
  for (std::size_t x = 0; x < f.degree(); ++x)
    if (f(static_cast<Point>(x)) != x)
      return static_cast<Point>(x);
  return std::nullopt;
}

std::optional<Point> first_difference(Perm const &f, Perm const &g)
{
  for (std::size_t x = 0; x < f.degree(); ++x)
    if (f(static_cast<Point>(x)) != g(static_cast<Point>(x)))
      return static_cast<Point>(x);
  return std::nullopt;
}

} // namespace

ActionTable make_action(std::int64_t p, std::vector<std::int64_t> f_table, std::vector<std::int64_t> lambda_table)
{
  if (!is_prime(p))
    throw std::invalid_argument("make_action: p = " + std::to_string(p) + " is not prime");
  if (p > 64)
    throw std::invalid_argument("make_action: p^4 points exceed the supported size");
  for (auto const *tab : {&f_table, &lambda_table}) {
    if (static_cast<std::int64_t>(tab->size()) != p)
      throw std::invalid_argument("make_action: tables must have exactly p entries");
    for (std::size_t i = 0; i < tab->size(); ++i)
      if ((*tab)[i] % p == 0)
        throw std::invalid_argument("make_action: table value at " + std::to_string(i) + " is zero mod p");
  }
  Generators g = build(p, f_table, lambda_table);
  return ActionTable{p, std::move(f_table), std::move(lambda_table), std::move(g.t), std::move(g.a),
                     std::move(g.b), std::move(g.c), std::move(g.d)};
}

std::vector<std::int64_t> random_table(std::int64_t p, std::uint64_t seed)
{
  if (p < 2)
    throw std::invalid_argument("random_table: p must be at least 2");
  Rng rng(seed);
  std::vector<std::int64_t> out(static_cast<std::size_t>(p));
  for (auto &v : out)
    v = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p - 1)));
  return out;
}

RelationReport verify_action(ActionTable const &act, std::int64_t window)
{
  if (window < 1)
    throw std::invalid_argument("verify_action: window must be at least 1");
  std::int64_t const p = act.p;
  RelationReport rep;
  rep.p = p;
  rep.window = window;

  auto record = [&](std::string name, std::optional<Point> moved) {
    RelationCheck c{std::move(name), !moved.has_value(), std::nullopt};
    if (moved)
      c.witness = decode_quad(*moved, p);
    rep.checks.push_back(std::move(c));
    return !moved.has_value();
  };

  Generators const g = build(p, act.f_table, act.lambda_table);
  char const names[4] = {'a', 'b', 'c', 'd'};
  Perm const *stored[4] = {&act.a, &act.b, &act.c, &act.d};
  Perm const *fresh[4] = {&g.a, &g.b, &g.c, &g.d};

  record("t matches tables", first_difference(act.t, g.t));
  for (int i = 0; i < 4; ++i)
    record(std::string(1, names[i]) + " matches tables", first_difference(*stored[i], *fresh[i]));

  rep.t_order_ok = record("t^4 = 1", moved_point(power(g.t, 4)));
  record("a^t = d", first_difference(conjugate(g.a, g.t), act.d));

  std::array<Perm, 4> conj;
  for (int i = 0; i < 4; ++i) {
    conj[i] = conjugate(*fresh[i], g.t);
    for (int j = 0; j < 4; ++j)
      if (conj[i] == *fresh[j])
        rep.t_conjugates[i] = names[j];
  }
  rep.t_cycle_ok = true;
  {
    int at = 0;
    std::array<bool, 4> seen{};
    for (int step = 0; step < 4; ++step) {
      if (seen[at]) {
        rep.t_cycle_ok = false;
        break;
      }
      seen[at] = true;
      char const nx = rep.t_conjugates[at];
      if (nx == '?') {
        rep.t_cycle_ok = false;
        break;
      }
      at = nx - 'a';
    }
    rep.t_cycle_ok = rep.t_cycle_ok && at == 0;
  }

  // Copy generated by g (shift) and g^t (lamp): lamp conjugates commute.
  for (int gi = 0; gi < 4; ++gi) {
    Perm const &shift = *fresh[gi];
    Perm const shift_inv = shift.inverse();
    std::vector<Perm> lamps;
    Perm pos = Perm::identity(shift.degree()), neg = pos;
    std::vector<Perm> powers(static_cast<std::size_t>(2 * window + 1));
    powers[static_cast<std::size_t>(window)] = pos;
    for (std::int64_t i = 1; i <= window; ++i) {
      pos = compose(pos, shift);
      neg = compose(neg, shift_inv);
      powers[static_cast<std::size_t>(window + i)] = pos;
      powers[static_cast<std::size_t>(window - i)] = neg;
    }
    for (std::int64_t i = -window; i <= window; ++i)
      lamps.push_back(conjugate(conj[gi], powers[static_cast<std::size_t>(window + i)]));
    for (std::int64_t i = -window; i <= window; ++i) {
      for (std::int64_t j = i + 1; j <= window; ++j) {
        Perm const &x = lamps[static_cast<std::size_t>(window + i)];
        Perm const &y = lamps[static_cast<std::size_t>(window + j)];
        std::string const lamp = std::string(1, names[gi]) + "^t";
        std::string const name = "[(" + lamp + ")^(" + names[gi] + "^" + std::to_string(i) + "), (" + lamp +
                                 ")^(" + names[gi] + "^" + std::to_string(j) + ")] = 1";
        record(name, first_difference(compose(x, y), compose(y, x)));
      }
    }
  }

  rep.pass = rep.t_cycle_ok;
  for (auto const &c : rep.checks)
    rep.pass = rep.pass && c.pass;
  return rep;
}

std::vector<BallEntry> injectivity_probe(ActionTable const &act, int depth, int cap)
{
  if (depth > cap)
    throw std::out_of_range("injectivity_probe: depth " + std::to_string(depth) + " exceeds the cap " +
                            std::to_string(cap));
  std::vector<BallEntry> out;
  if (depth <= 0)
    return out;
  Ball const B = ball(GroupSpec{Family::Wreath, 2}, depth);
  for (auto const &e : B.entries) {
    if (is_trivial(e.element))
      continue;
    Perm acc = Perm::identity(act.a.degree());
    for (Letter const &l : e.word.letters())
      acc = compose(acc, power(l.gen == 'a' ? act.d : act.a, l.exp));
    if (acc.is_identity())
      out.push_back(e);
  }
  return out;
}

} // namespace sofic
