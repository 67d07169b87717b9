#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sofic/approx.hpp"
#include "sofic/perm.hpp"

namespace sofic
{

/// Which equation the agreement count scores.
enum class Orientation
{
  Forward, ///< f(alpha(x)) = beta(f(x))
  Reverse, ///< alpha(f(x)) = f(beta(x))
};

std::string_view to_string(Orientation o);
Orientation parse_orientation(std::string_view s);

/// Find f with f^k = id almost conjugating alpha to beta.
struct ConjProblem
{
  std::size_t n = 0;
  std::uint64_t k = 1;
  Perm alpha;
  Perm beta;
  Orientation orientation = Orientation::Forward;

  /// Throws std::invalid_argument on degree mismatch or k = 0.
  static ConjProblem make(Perm alpha, Perm beta, std::uint64_t k,
                          Orientation orientation = Orientation::Forward);

  /// The same agreement set in Forward form: Reverse swaps alpha and beta.
  ConjProblem forward() const;

  friend bool operator==(ConjProblem const &, ConjProblem const &) = default;
};

/// alpha = x+p, beta = x+q on Z/n.
ConjProblem translation_problem(std::int64_t n, std::int64_t p, std::int64_t q, std::uint64_t k);
/// alpha = x+1, beta = r*x on Z/n (r a unit).
ConjProblem multiplier_problem(std::int64_t n, std::int64_t r, std::uint64_t k);
/// alpha = psi(a), beta = psi(b).
ConjProblem spec_problem(ApproxSpec const &spec, std::uint64_t k);

/// Number of points where the orientation's equation holds.
std::size_t agreement(Perm const &f, ConjProblem const &prob);

/// Smallest e >= 1 with f^e = id.
std::uint64_t order_of(Perm const &f);

struct SearchReport
{
  ConjProblem problem;
  std::string algorithm; ///< exact, brute or local
  std::uint64_t seed = 0;
  Perm f;
  std::uint64_t order_of_f = 1;
  std::size_t agreement_count = 0;
  Fraction agreement_fraction;
  std::uint64_t iterations = 0;
  double elapsed_ms = 0;
  /// Per restart, the score after each accepted strict improvement (local
  /// search only, filled when requested).
  std::vector<std::vector<std::size_t>> traces;
};

/// l = q p^-1 mod n; returns x -> l x when l^k = 1 and l is a unit.
std::optional<Perm> exact_multiplicative(std::int64_t n, std::int64_t p, std::int64_t q, std::uint64_t k);

/// exact_multiplicative packaged as a report on the translation problem.
/// Throws std::domain_error when no such l exists.
SearchReport exact_report(std::int64_t n, std::int64_t p, std::int64_t q, std::uint64_t k);

/// Exhaustive over {f : f^k = id}. Ties go to the lexicographically smallest
/// image array. Throws std::out_of_range when n > cap.
SearchReport brute_force(ConjProblem const &prob, std::size_t cap = 9);

struct LocalSearchOptions
{
  std::uint64_t seed = 0;
  std::uint64_t iters = 0;    ///< per restart; 0 means 200 n
  std::uint64_t restarts = 16;
  unsigned workers = 0;       ///< 0 means hardware concurrency
  bool record_traces = false;
};

/// Hill climbing over f' = s f s for transpositions s, accepting moves that do
/// not lower the score. Restart r starts from a seed chosen by r mod 3 (exact
/// multiplicative candidate, greedy chain, uniform sample) and draws from
/// derive_seed(seed, r). The winner is the best score, then the smallest f,
/// so the result does not depend on workers.
SearchReport local_search(ConjProblem const &prob, LocalSearchOptions const &opts);

/// The greedy chain-extension seed, projected to order dividing k.
Perm greedy_chain_seed(ConjProblem const &prob, std::uint64_t seed);

/// Product of psi images of a and b letters and powers of f for t letters,
/// composed like eval_word.
Perm psi_f_eval(ApproxSpec const &spec, Perm const &f, GenWord const &w);

/// Max over pairs (b, phi b) of d(psi(b) o f, f o psi(phi b)).
Fraction higman_defect(ApproxSpec const &spec, Perm const &f,
                       std::vector<std::pair<Element, Element>> const &pairs);

/// x -> -x on Z/n.
Perm negation(std::size_t n);
/// nu f nu with nu = negation.
Perm sign_flip(Perm const &f);
/// alpha, beta -> nu alpha^-1 nu, nu beta^-1 nu. Turns (x+1, m^-1 x) into (x+1, m x).
ConjProblem sign_flip(ConjProblem const &prob);
/// Flips problem and f; counts carry over unchanged. An involution.
SearchReport sign_flip(SearchReport const &r);

struct AlignmentReport
{
  Perm tau;
  std::vector<Element> elements;
  std::vector<Fraction> distances; ///< d(tau^-1 rho1(s) tau, rho2(s)) per element
  Fraction max_distance;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
};

/// Best-effort tau minimizing the worst distance over S: orbit-by-orbit
/// propagation along the generators, then hill climbing on tau (s).
AlignmentReport align(ApproxSpec const &spec1, ApproxSpec const &spec2, std::vector<Element> const &S,
                      std::uint64_t seed, std::uint64_t iters);

/// Distances recomputed from tau.
std::vector<Fraction> alignment_distances(ApproxSpec const &spec1, ApproxSpec const &spec2,
                                          std::vector<Element> const &S, Perm const &tau);

} // namespace sofic
