#include "sofic/conjsearch.hpp"
#include "sofic/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace sofic
{

std::string_view to_string(Orientation o)
{ return o == Orientation::Forward ? "forward" : "reverse"; }

Orientation parse_orientation(std::string_view s)
{
  if (s == "forward")
    return Orientation::Forward;
  if (s == "reverse")
    return Orientation::Reverse;
  throw std::invalid_argument("unknown orientation '" + std::string(s) + "'");
}

ConjProblem ConjProblem::make(Perm alpha, Perm beta, std::uint64_t k, Orientation orientation)
{
  if (alpha.degree() != beta.degree())
    throw std::invalid_argument("ConjProblem: alpha and beta have different degrees");
  if (k == 0)
    throw std::invalid_argument("ConjProblem: k must be positive");
  ConjProblem p;
  p.n = alpha.degree();
  p.k = k;
  p.alpha = std::move(alpha);
  p.beta = std::move(beta);
  p.orientation = orientation;
  return p;
}

ConjProblem ConjProblem::forward() const
{
  if (orientation == Orientation::Forward)
    return *this;
  return make(beta, alpha, k, Orientation::Forward);
}

namespace
{

std::int64_t posmod(std::int64_t a, std::int64_t n)
{
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

Perm translation(std::int64_t n, std::int64_t s)
{
  return Perm::from_function(static_cast<std::size_t>(n),
                             [&](Point x) { return posmod(static_cast<std::int64_t>(x) + s, n); });
}

Perm scaling(std::int64_t n, std::int64_t l)
{
  return Perm::from_function(static_cast<std::size_t>(n), [&](Point x) {
    return static_cast<std::int64_t>(static_cast<__int128>(posmod(l, n)) * x % n);
  });
}

/// The shift s when p is x -> x + s.
std::optional<std::int64_t> translation_amount(Perm const &p)
{
  auto const n = static_cast<std::int64_t>(p.degree());
  if (n == 0)
    return std::nullopt;
  std::int64_t const s = posmod(static_cast<std::int64_t>(p(0)), n);
  for (std::int64_t x = 1; x < n; ++x)
    if (posmod(static_cast<std::int64_t>(p(static_cast<Point>(x))) - x, n) != s)
      return std::nullopt;
  return s;
}

std::size_t forward_agreement(std::span<Point const> f, std::span<Point const> alpha,
                              std::span<Point const> beta)
{
  std::size_t count = 0;
  for (std::size_t x = 0; x < f.size(); ++x)
    count += f[alpha[x]] == beta[f[x]];
  return count;
}

SearchReport make_report(ConjProblem const &prob, std::string algorithm, std::uint64_t seed, Perm f,
                         std::uint64_t iterations)
{
  SearchReport r;
  r.problem = prob;
  r.algorithm = std::move(algorithm);
  r.seed = seed;
  r.order_of_f = order_of(f);
  r.agreement_count = agreement(f, prob);
  r.agreement_fraction = Fraction(static_cast<std::int64_t>(r.agreement_count),
                                  static_cast<std::int64_t>(std::max<std::size_t>(prob.n, 1)));
  r.f = std::move(f);
  r.iterations = iterations;
  return r;
}

double ms_since(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

ConjProblem translation_problem(std::int64_t n, std::int64_t p, std::int64_t q, std::uint64_t k)
{
  if (n < 1)
    throw std::invalid_argument("translation_problem: n must be positive");
  return ConjProblem::make(translation(n, p), translation(n, q), k);
}

ConjProblem multiplier_problem(std::int64_t n, std::int64_t r, std::uint64_t k)
{
  if (n < 1)
    throw std::invalid_argument("multiplier_problem: n must be positive");
  if (std::gcd(posmod(r, n), n) != 1)
    throw std::invalid_argument("multiplier_problem: r must be a unit mod n");
  return ConjProblem::make(translation(n, 1), scaling(n, r), k);
}

ConjProblem spec_problem(ApproxSpec const &spec, std::uint64_t k)
{ return ConjProblem::make(spec.gen_a, spec.gen_b, k); }

std::size_t agreement(Perm const &f, ConjProblem const &prob)
{
  if (f.degree() != prob.n)
    throw std::invalid_argument("agreement: degree of f does not match the problem");
  ConjProblem const fw = prob.forward();
  return forward_agreement(f.images(), fw.alpha.images(), fw.beta.images());
}

std::uint64_t order_of(Perm const &f)
{
  std::uint64_t ord = 1;
  for (auto const &c : cycles(f)) {
    std::uint64_t const g = std::gcd(ord, static_cast<std::uint64_t>(c.size()));
    ord = ord / g * c.size();
  }
  return ord;
}

std::optional<Perm> exact_multiplicative(std::int64_t n, std::int64_t p, std::int64_t q, std::uint64_t k)
{
  if (n < 1)
    throw std::invalid_argument("exact_multiplicative: n must be positive");
  if (std::gcd(posmod(p, n), n) != 1)
    throw std::invalid_argument("exact_multiplicative: p must be coprime to n");
  std::int64_t const l =
      static_cast<std::int64_t>(static_cast<__int128>(posmod(q, n)) * mod_inverse(p, n) % n);
  if (std::gcd(l, n) != 1)
    return std::nullopt;
  if (mod_pow(l, static_cast<std::int64_t>(k), n) != posmod(1, n))
    return std::nullopt;
  return scaling(n, l);
}

SearchReport exact_report(std::int64_t n, std::int64_t p, std::int64_t q, std::uint64_t k)
{
  auto const start = std::chrono::steady_clock::now();
  auto f = exact_multiplicative(n, p, q, k);
  if (!f)
    throw std::domain_error("exact: q p^-1 mod n is not a unit of order dividing k");
  SearchReport r = make_report(translation_problem(n, p, q, k), "exact", 0, std::move(*f), 0);
  r.elapsed_ms = ms_since(start);
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive search

SearchReport brute_force(ConjProblem const &prob, std::size_t cap)
{
  if (prob.n > cap)
    throw std::out_of_range("brute_force: n = " + std::to_string(prob.n) + " exceeds the cap " +
                            std::to_string(cap));
  auto const start = std::chrono::steady_clock::now();
  ConjProblem const fw = prob.forward();
  auto const alpha = fw.alpha.images(), beta = fw.beta.images();
  std::size_t const n = prob.n;

  std::vector<std::size_t> lengths;
  for (std::uint64_t d = 1; d <= prob.k && d <= n; ++d)
    if (prob.k % d == 0)
      lengths.push_back(d);

  Point const unset = static_cast<Point>(n);
  std::vector<Point> f(n, unset);
  std::vector<bool> used(n, false);
  std::vector<Point> best;
  std::size_t best_score = 0;
  std::uint64_t visited = 0;

  // Build f cycle by cycle: the cycle through the smallest free point, with
  // its other members chosen in order.
  std::vector<Point> cyc;
  auto place = [&](auto &&self, std::size_t first_free) -> void {
    while (first_free < n && used[first_free])
      ++first_free;
    if (first_free == n) {
      ++visited;
      std::size_t const s = forward_agreement(f, alpha, beta);
      if (best.empty() || s > best_score || (s == best_score && f < best)) {
        best = f;
        best_score = s;
      }
      return;
    }
    std::size_t const free_count = static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
    for (std::size_t len : lengths) {
      if (len > free_count)
        break;
      cyc.assign(1, static_cast<Point>(first_free));
      used[first_free] = true;
      auto extend = [&](auto &&ext) -> void {
        if (cyc.size() == len) {
          for (std::size_t i = 0; i < len; ++i)
            f[cyc[i]] = cyc[(i + 1) % len];
          std::vector<Point> const saved = cyc;
          self(self, first_free + 1);
          cyc = saved;
          return;
        }
        for (std::size_t y = first_free + 1; y < n; ++y) {
          if (used[y])
            continue;
          used[y] = true;
          cyc.push_back(static_cast<Point>(y));
          ext(ext);
          cyc.pop_back();
          used[y] = false;
        }
      };
      extend(extend);
      used[first_free] = false;
    }
  };
  if (n == 0)
    best = {};
  else
    place(place, 0);

  SearchReport r = make_report(prob, "brute", 0, Perm::from_images(best), visited);
  r.elapsed_ms = ms_since(start);
  return r;
}

// ---------------------------------------------------------------------------
// Local search

Perm greedy_chain_seed(ConjProblem const &prob, std::uint64_t seed)
{
  ConjProblem const fw = prob.forward();
  std::size_t const n = prob.n;
  Rng rng(seed);
  Point const unset = static_cast<Point>(n);
  std::vector<Point> f(n, unset);
  std::vector<Point> unused(n);
  std::iota(unused.begin(), unused.end(), Point{0});
  std::vector<std::size_t> where(n);
  std::iota(where.begin(), where.end(), std::size_t{0});
  auto take = [&](Point v) {
    std::size_t const i = where[v];
    Point const last = unused.back();
    unused[i] = last;
    where[last] = i;
    unused.pop_back();
  };
  auto is_unused = [&](Point v) { return where[v] < unused.size() && unused[where[v]] == v; };

  for (std::size_t start = 0; start < n; ++start) {
    if (f[start] != unset)
      continue;
    Point x = static_cast<Point>(start);
    Point v = unused[rng.below(unused.size())];
    for (;;) {
      f[x] = v;
      take(v);
      Point const nx = fw.alpha(x);
      Point const nv = fw.beta(v);
      if (f[nx] != unset || !is_unused(nv))
        break;
      x = nx;
      v = nv;
    }
  }
  return project_to_order(Perm::from_images(std::move(f)), prob.k);
}

namespace
{

struct RestartResult
{
  std::vector<Point> f;
  std::size_t score = 0;
  std::vector<std::size_t> trace;
};

Perm initial_guess(ConjProblem const &fw, std::uint64_t restart, Rng &rng)
{
  std::size_t const n = fw.n;
  switch (restart % 3) {
  case 0: {
    auto const s = translation_amount(fw.alpha);
    auto const t = translation_amount(fw.beta);
    auto const nn = static_cast<std::int64_t>(n);
    if (s && t && std::gcd(*s, nn) == 1) {
      std::int64_t const l = static_cast<std::int64_t>(static_cast<__int128>(*t) * mod_inverse(*s, nn) % nn);
      if (std::gcd(l, nn) == 1)
        return project_to_order(scaling(nn, l), fw.k);
    }
    return greedy_chain_seed(fw, rng.next());
  }
  case 1:
    return greedy_chain_seed(fw, rng.next());
  default:
    return sample_order_k(n, fw.k, rng.next());
  }
}

RestartResult run_restart(ConjProblem const &fw, std::uint64_t seed, std::uint64_t restart,
                          std::uint64_t iters, bool record)
{
  std::size_t const n = fw.n;
  Rng rng(derive_seed(seed, restart));
  Perm const start = initial_guess(fw, restart, rng);
  auto const alpha = fw.alpha.images(), beta = fw.beta.images();
  Perm const alpha_inv_p = fw.alpha.inverse();
  auto const alpha_inv = alpha_inv_p.images();

  std::vector<Point> f(start.images().begin(), start.images().end());
  std::vector<Point> finv(n);
  for (std::size_t x = 0; x < n; ++x)
    finv[f[x]] = static_cast<Point>(x);

  RestartResult res;
  res.score = forward_agreement(f, alpha, beta);
  if (record)
    res.trace.push_back(res.score);
  if (n < 2) {
    res.f = std::move(f);
    return res;
  }

  auto ok = [&](Point x) -> std::size_t { return f[alpha[x]] == beta[f[x]]; };

  Point changed[4], touched[8], new_vals[4], old_vals[4];
  for (std::uint64_t it = 0; it < iters; ++it) {
    Point const i = static_cast<Point>(rng.below(n));
    Point j = static_cast<Point>(rng.below(n - 1));
    if (j >= i)
      ++j;
    auto swap_ij = [&](Point y) { return y == i ? j : y == j ? i : y; };

    // f' = s f s differs from f only on {i, j, f^-1(i), f^-1(j)}.
    std::size_t nc = 0;
    for (Point y : {i, j, finv[i], finv[j]})
      if (std::find(changed, changed + nc, y) == changed + nc)
        changed[nc++] = y;
    std::size_t nt = 0;
    for (std::size_t c = 0; c < nc; ++c)
      for (Point x : {changed[c], alpha_inv[changed[c]]})
        if (std::find(touched, touched + nt, x) == touched + nt)
          touched[nt++] = x;

    std::size_t before = 0;
    for (std::size_t t = 0; t < nt; ++t)
      before += ok(touched[t]);
    for (std::size_t c = 0; c < nc; ++c) {
      old_vals[c] = f[changed[c]];
      new_vals[c] = swap_ij(f[swap_ij(changed[c])]);
    }
    for (std::size_t c = 0; c < nc; ++c) {
      f[changed[c]] = new_vals[c];
      finv[new_vals[c]] = changed[c];
    }
    std::size_t after = 0;
    for (std::size_t t = 0; t < nt; ++t)
      after += ok(touched[t]);

    if (after >= before) {
      res.score = res.score + after - before;
      if (record && after > before)
        res.trace.push_back(res.score);
    } else {
      for (std::size_t c = 0; c < nc; ++c) {
        f[changed[c]] = old_vals[c];
        finv[old_vals[c]] = changed[c];
      }
    }
  }
  res.f = std::move(f);
  return res;
}

} // namespace

SearchReport local_search(ConjProblem const &prob, LocalSearchOptions const &opts)
{
  auto const start = std::chrono::steady_clock::now();
  ConjProblem const fw = prob.forward();
  std::uint64_t const iters = opts.iters ? opts.iters : 200 * static_cast<std::uint64_t>(prob.n);
  std::uint64_t const restarts = std::max<std::uint64_t>(opts.restarts, 1);

  std::vector<RestartResult> results(restarts);
  unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, restarts));

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t r; (r = next.fetch_add(1)) < restarts;)
      results[r] = run_restart(fw, opts.seed, r, iters, opts.record_traces);
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(worker);
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].score > results[best].score ||
        (results[r].score == results[best].score && results[r].f < results[best].f))
      best = r;

  SearchReport rep = make_report(prob, "local", opts.seed, Perm::from_images(results[best].f), iters * restarts);
  if (opts.record_traces)
    for (auto &r : results)
      rep.traces.push_back(std::move(r.trace));
  rep.elapsed_ms = ms_since(start);
  return rep;
}

// ---------------------------------------------------------------------------
// Higman-style evaluation

Perm psi_f_eval(ApproxSpec const &spec, Perm const &f, GenWord const &w)
{
  if (f.degree() != spec.degree())
    throw std::invalid_argument("psi_f_eval: degree of f does not match the approximation");
  Perm acc = Perm::identity(spec.degree());
  for (Letter const &l : w.letters()) {
    Perm const &g = l.gen == 'a' ? spec.gen_a : l.gen == 'b' ? spec.gen_b : f;
    acc = compose(acc, power(g, l.exp));
  }
  return acc;
}

Fraction higman_defect(ApproxSpec const &spec, Perm const &f,
                       std::vector<std::pair<Element, Element>> const &pairs)
{
  if (f.degree() != spec.degree())
    throw std::invalid_argument("higman_defect: degree of f does not match the approximation");
  Fraction worst(0);
  for (auto const &[b, phib] : pairs) {
    Fraction const d = hamming(compose(eval(spec, b), f), compose(f, eval(spec, phib))).ratio();
    worst = std::max(worst, d);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Sign flip

Perm negation(std::size_t n)
{ return Perm::from_function(n, [n](Point x) { return x == 0 ? 0 : n - x; }); }

Perm sign_flip(Perm const &f)
{
  Perm const nu = negation(f.degree());
  return compose(compose(nu, f), nu);
}

ConjProblem sign_flip(ConjProblem const &prob)
{
  Perm const nu = negation(prob.n);
  auto flip = [&](Perm const &p) { return compose(compose(nu, p.inverse()), nu); };
  return ConjProblem::make(flip(prob.alpha), flip(prob.beta), prob.k, prob.orientation);
}

SearchReport sign_flip(SearchReport const &r)
{
  SearchReport out = r;
  out.problem = sign_flip(r.problem);
  out.f = sign_flip(r.f);
  return out;
}

// ---------------------------------------------------------------------------
// Alignment

std::vector<Fraction> alignment_distances(ApproxSpec const &spec1, ApproxSpec const &spec2,
                                          std::vector<Element> const &S, Perm const &tau)
{
  std::vector<Fraction> out;
  out.reserve(S.size());
  for (auto const &s : S)
    out.push_back(hamming(conjugate(eval(spec1, s), tau), eval(spec2, s)).ratio());
  return out;
}

AlignmentReport align(ApproxSpec const &spec1, ApproxSpec const &spec2, std::vector<Element> const &S,
                      std::uint64_t seed, std::uint64_t iters)
{
  if (spec1.family != spec2.family)
    throw std::invalid_argument("align: the approximations are of different families");
  if (spec1.degree() != spec2.degree())
    throw std::invalid_argument("align: degree mismatch");
  std::size_t const n = spec1.degree();
  Point const unset = static_cast<Point>(n);

  // tau rho2(g) = rho1(g) tau along the generators, one rho2-orbit at a time.
  std::vector<std::pair<Perm, Perm>> gens;
  gens.emplace_back(spec1.gen_a, spec2.gen_a);
  gens.emplace_back(spec1.gen_a.inverse(), spec2.gen_a.inverse());
  gens.emplace_back(spec1.gen_b, spec2.gen_b);
  gens.emplace_back(spec1.gen_b.inverse(), spec2.gen_b.inverse());

  std::vector<Point> tau(n, unset);
  std::vector<bool> used(n, false);
  auto propagate = [&](Point x0, Point y0, std::vector<Point> &t, std::vector<bool> &u) {
    std::vector<Point> queue{x0};
    t[x0] = y0;
    u[y0] = true;
    std::size_t assigned = 1, conflicts = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      Point const x = queue[h];
      for (auto const &[g1, g2] : gens) {
        Point const nx = g2(x), ny = g1(t[x]);
        if (t[nx] == unset && !u[ny]) {
          t[nx] = ny;
          u[ny] = true;
          ++assigned;
          queue.push_back(nx);
        } else if (t[nx] != ny) {
          ++conflicts;
        }
      }
    }
    return std::make_pair(assigned, conflicts);
  };

  for (std::size_t x0 = 0; x0 < n; ++x0) {
    if (tau[x0] != unset)
      continue;
    Point best_y = unset;
    std::pair<std::size_t, std::size_t> best_key{0, 0};
    for (std::size_t y0 = 0; y0 < n; ++y0) {
      if (used[y0])
        continue;
      std::vector<Point> t = tau;
      std::vector<bool> u = used;
      auto const [assigned, conflicts] = propagate(static_cast<Point>(x0), static_cast<Point>(y0), t, u);
      if (best_y == unset || assigned > best_key.first ||
          (assigned == best_key.first && conflicts < best_key.second)) {
        best_y = static_cast<Point>(y0);
        best_key = {assigned, conflicts};
      }
    }
    propagate(static_cast<Point>(x0), best_y, tau, used);
  }

  // Hill climb on tau' = tau (i j). Disagreements of s are the x with
  // rho1(s)(tau(x)) != tau(rho2(s)(x)).
  std::vector<Perm> r1, r2, r2_inv;
  for (auto const &s : S) {
    r1.push_back(eval(spec1, s));
    r2.push_back(eval(spec2, s));
    r2_inv.push_back(r2.back().inverse());
  }
  auto bad = [&](std::size_t si, Point x) -> std::size_t { return r1[si](tau[x]) != tau[r2[si](x)]; };
  std::vector<std::size_t> dis(S.size(), 0);
  for (std::size_t si = 0; si < S.size(); ++si)
    for (std::size_t x = 0; x < n; ++x)
      dis[si] += bad(si, static_cast<Point>(x));
  auto key = [&](std::vector<std::size_t> const &d) {
    std::size_t mx = 0, sum = 0;
    for (std::size_t v : d) {
      mx = std::max(mx, v);
      sum += v;
    }
    return std::make_pair(mx, sum);
  };

  Rng rng(seed);
  std::uint64_t done = 0;
  if (n >= 2 && !S.empty()) {
    std::vector<std::size_t> trial(S.size());
    for (; done < iters && key(dis).first > 0; ++done) {
      Point const i = static_cast<Point>(rng.below(n));
      Point j = static_cast<Point>(rng.below(n - 1));
      if (j >= i)
        ++j;
      auto count_touched = [&](std::size_t si) {
        Point pts[6] = {i, j, r2_inv[si](i), r2_inv[si](j), 0, 0};
        std::size_t np = 0, c = 0;
        for (std::size_t a = 0; a < 4; ++a)
          if (std::find(pts, pts + np, pts[a]) == pts + np)
            pts[np++] = pts[a];
        for (std::size_t a = 0; a < np; ++a)
          c += bad(si, pts[a]);
        return c;
      };
      for (std::size_t si = 0; si < S.size(); ++si)
        trial[si] = dis[si] - count_touched(si);
      std::swap(tau[i], tau[j]);
      for (std::size_t si = 0; si < S.size(); ++si)
        trial[si] += count_touched(si);
      if (key(trial) <= key(dis))
        dis = trial;
      else
        std::swap(tau[i], tau[j]);
    }
  }

  AlignmentReport rep;
  rep.tau = Perm::from_images(std::move(tau));
  rep.elements = S;
  rep.distances = alignment_distances(spec1, spec2, S, rep.tau);
  rep.max_distance = Fraction(0);
  for (auto const &d : rep.distances)
    rep.max_distance = std::max(rep.max_distance, d);
  rep.seed = seed;
  rep.iterations = done;
  return rep;
}

} // namespace sofic
