#include "sofic/cli.hpp"
#include "sofic/rng.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <ostream>
#include <set>

namespace sofic::cli
{

using sofic::to_json;

namespace
{

/// Bad or missing flags; exit code 2.
struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct FlagDef
{
  std::string name;
  std::string fallback; ///< empty means unset unless given
  std::string help;
  bool is_switch = false;
};

struct CommandDef
{
  std::string name;
  std::string help;
  std::vector<FlagDef> flags;
};

FlagDef const format_flag{"format", "json", "output format: json or csv"};

std::vector<FlagDef> group_flags()
{
  return {{"group", "", "family: z2, heis, bs, zwrz or metab"},
          {"n", "", "modulus n"},
          {"p", "1", "parameter p (z2, metab)"},
          {"q", "1", "parameter q (z2, metab)"},
          {"m", "2", "parameter m (bs, zwrz)"}};
}

std::vector<CommandDef> const &commands()
{
  static std::vector<CommandDef> const defs = [] {
    std::vector<CommandDef> d;
    auto with_group = [](std::vector<FlagDef> extra) {
      auto g = group_flags();
      g.insert(g.end(), extra.begin(), extra.end());
      return g;
    };
    d.push_back({"count-orders",
                 "Exact number of permutations of order dividing k in Sym(n). csv: n,k,count",
                 {{"n", "", "degree"}, {"k", "", "order bound"}}});
    d.push_back({"make-approx",
                 "Generator images of the explicit approximation. csv: family,n,p,q,m,degree,gen_a,gen_b",
                 group_flags()});
    d.push_back({"verify",
                 "Check the approximation conditions on a ball; exit 0 iff they hold. "
                 "csv: delta,worst_hom_defect,hom_witness,worst_id_closeness,id_witness,pairs_checked,"
                 "elements_checked,pass",
                 with_group({{"spec", "", "approximation file (instead of --group ...)"},
                             {"ball", "2", "ball radius L"},
                             {"delta", "", "threshold delta, e.g. 1/10 or 0.1"},
                             {"words", "", "metab only: file with a list of words asserted nontrivial"}})});
    d.push_back({"search",
                 "Look for f with f^k = 1 maximizing #{x : f(alpha x) = beta(f x)}. "
                 "csv: n,k,orientation,algorithm,seed,order_of_f,agreement_count,agreement_fraction,"
                 "agreement_value,iterations,f",
                 with_group({{"spec", "", "approximation file; alpha = psi(a), beta = psi(b)"},
                             {"alpha", "", "permutation file for alpha"},
                             {"beta", "", "permutation file for beta"},
                             {"k", "4", "order bound k"},
                             {"algo", "local", "exact, brute or local"},
                             {"orientation", "forward", "forward: f alpha = beta f; reverse: alpha f = f beta"},
                             {"flip", "", "replace the problem by its image under x -> -x", true},
                             {"iters", "0", "moves per restart (0: 200 n)"},
                             {"restarts", "16", "local search restarts"},
                             {"cap", "9", "largest n for brute"}})});
    d.push_back({"defect",
                 "max over pairs (b, phi b) of d(psi(b) f, f psi(phi b)). csv: defect,defect_value",
                 {{"spec", "", "approximation file"},
                  {"perm", "", "permutation file for f"},
                  {"pairs", "", "file with a list of [b, phi b] element pairs"}}});
    d.push_back({"amplify",
                 "Block-diagonal copy of a permutation in a larger degree. csv: n,f",
                 {{"perm", "", "permutation file"}, {"target-n", "", "target degree"}}});
    d.push_back({"align",
                 "Search tau with tau^-1 rho1(s) tau close to rho2(s) on a ball. csv: element,distance,distance_value",
                 {{"spec1", "", "first approximation file"},
                  {"spec2", "", "second approximation file"},
                  {"ball", "2", "ball radius L"},
                  {"iters", "20000", "hill-climbing moves"}}});
    d.push_back({"higman-action",
                 "Build the action on F_p^4, check its relations and probe injectivity. "
                 "csv: p,window,relation,pass,witness",
                 {{"p", "", "prime p"},
                  {"f-table", "", "file with p nonzero values"},
                  {"lambda-table", "", "file with p nonzero values"},
                  {"random", "", "draw tables not given as files from the seed", true},
                  {"check", "", "run the relation checks", true},
                  {"window", "3", "conjugation window I"},
                  {"probe-depth", "0", "injectivity probe depth L"}}});
    d.push_back({"heuristic",
                 "Counting estimate for order-k permutations with local conditions. "
                 "csv: n,k,eps,eps_prime,log_P,log_K,log_PK,ratio,k4_coefficient,k4_exponent",
                 {{"n", "", "degree"},
                  {"k", "4", "order bound"},
                  {"eps", "0", "epsilon"},
                  {"eps-prime", "0", "epsilon'"}}});
    d.push_back({"poly-check",
                 "Whether n divides t(m) for no nonzero t with degree <= C and |t_i| < C. "
                 "csv: n,m,C,holds,via_fast_path,witness",
                 {{"n", "", "modulus"}, {"m", "", "evaluation point"}, {"C", "", "bound C"}}});
    d.push_back({"heis-fixed",
                 "Fixed points of psi_n(a^lam b^mu c^nu) against |lam| n. csv: n,lam,mu,nu,count,bound,status",
                 {{"n", "", "modulus"}, {"lam", "0", "lambda"}, {"mu", "0", "mu"}, {"nu", "0", "nu"}}});
    for (auto &c : d)
      c.flags.push_back(format_flag);
    return d;
  }();
  return defs;
}

CommandDef const *find_command(std::string const &name)
{
  for (auto const &c : commands())
    if (c.name == name)
      return &c;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Flag access

struct Flags
{
  ExperimentConfig const &cfg;

  bool has(std::string const &name) const { return cfg.flags.count(name) > 0; }

  std::string str(std::string const &name) const
  {
    auto it = cfg.flags.find(name);
    if (it == cfg.flags.end())
      throw UsageError("missing required flag --" + name);
    return it->second;
  }

  std::int64_t i64(std::string const &name) const
  {
    std::string const s = str(name);
    std::int64_t v = 0;
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw UsageError("--" + name + ": expected an integer, got '" + s + "'");
    return v;
  }

  std::uint64_t u64(std::string const &name) const
  {
    std::int64_t const v = i64(name);
    if (v < 0)
      throw UsageError("--" + name + " must be non-negative");
    return static_cast<std::uint64_t>(v);
  }

  Fraction frac(std::string const &name) const
  {
    try {
      return Fraction::parse(str(name));
    } catch (std::invalid_argument const &e) {
      throw UsageError("--" + name + ": " + e.what());
    }
  }

  bool on(std::string const &name) const { return has(name) && str(name) == "true"; }
};

Json unwrap(Json const &j)
{
  if (j.is_object() && j.contains("schema") && j.contains("result"))
    return j.at("result");
  return j;
}

ApproxSpec spec_from_flags(Flags const &fl, std::string const &file_flag = "spec")
{
  if (fl.has(file_flag))
    return spec_from_json(unwrap(read_json_file(fl.str(file_flag))));
  if (!fl.has("group"))
    throw UsageError("give --" + file_flag + " FILE or --group with its parameters");
  Family fam;
  try {
    fam = parse_family(fl.str("group"));
  } catch (std::invalid_argument const &e) {
    throw UsageError(e.what());
  }
  ApproxParams params{fl.i64("n"), fl.i64("p"), fl.i64("q"), fl.i64("m")};
  return make_approx(fam, params);
}

Element element_or_word(Json const &j, GroupSpec const &g)
{
  if (j.is_string())
    return eval_word(GenWord::parse(j.get<std::string>()), g);
  return element_from_json(j);
}

// ---------------------------------------------------------------------------
// Output

struct Emitter
{
  ExperimentConfig const &cfg;
  std::ostream &out;

  bool csv() const { return cfg.flags.at("format") == "csv"; }

  void json(Json result) const
  {
    Json rec;
    rec["schema"] = 1;
    rec["config"] = to_json(cfg);
    rec["result"] = std::move(result);
    out << rec.dump() << '\n';
  }

  void table(CsvTable t) const
  {
    std::string const c = to_json(cfg).dump();
    t.header.push_back("config");
    for (auto &r : t.rows)
      r.push_back(c);
    write_csv(out, t);
  }
};

int cmd_count_orders(Flags const &fl, Emitter const &em)
{
  std::int64_t const n = fl.i64("n"), k = fl.i64("k");
  if (n < 0 || k < 1)
    throw UsageError("count-orders needs n >= 0 and k >= 1");
  BigInt const c = count_order_dividing(static_cast<std::size_t>(n), static_cast<std::uint64_t>(k));
  if (em.csv())
    em.table({{"n", "k", "count"}, {{std::to_string(n), std::to_string(k), c.str()}}});
  else
    em.json(Json{{"n", n}, {"k", k}, {"count", to_json(c)}});
  return 0;
}

int cmd_make_approx(Flags const &fl, Emitter const &em)
{
  ApproxSpec const spec = spec_from_flags(fl);
  if (em.csv()) {
    auto perm_cell = [](Perm const &f) {
      std::string s;
      for (std::size_t x = 0; x < f.degree(); ++x)
        s += (x ? " " : "") + std::to_string(f(static_cast<Point>(x)));
      return s;
    };
    em.table({{"family", "n", "p", "q", "m", "degree", "gen_a", "gen_b"},
              {{std::string(family_tag(spec.family)), std::to_string(spec.params.n), std::to_string(spec.params.p),
                std::to_string(spec.params.q), std::to_string(spec.params.m), std::to_string(spec.degree()),
                perm_cell(spec.gen_a), perm_cell(spec.gen_b)}}});
  } else {
    em.json(to_json(spec));
  }
  return 0;
}

int cmd_verify(Flags const &fl, Emitter const &em)
{
  ApproxSpec const spec = spec_from_flags(fl);
  Fraction const delta = fl.frac("delta");
  std::int64_t const L = fl.i64("ball");
  if (L < 0 || L > 12)
    throw UsageError("--ball must be in [0, 12]");

  VerifyReport rep;
  if (spec.family == Family::Metabelian) {
    std::vector<GenWord> words;
    if (fl.has("words")) {
      Json const j = unwrap(read_json_file(fl.str("words")));
      if (!j.is_array())
        throw FormatError("--words file must hold a list of words");
      for (auto const &w : j)
        words.push_back(word_from_json(w));
    } else {
      // Distinct reduced words of length <= 6 are distinct elements: no
      // nonempty reduced word of length <= 12 lies in [F', F'].
      if (L > 6)
        throw UsageError("metab without --words supports --ball up to 6");
      for (auto const &e : ball(spec.group(), static_cast<int>(L)).entries)
        words.push_back(e.word);
    }
    rep = verify_words(spec, words, delta);
  } else {
    std::vector<Element> S;
    for (auto const &e : ball(spec.group(), static_cast<int>(L)).entries)
      S.push_back(e.element);
    rep = verify(spec, S, delta);
  }
  if (em.csv())
    em.table(to_csv(rep));
  else
    em.json(to_json(rep));
  return rep.pass ? 0 : 1;
}

int cmd_search(Flags const &fl, Emitter const &em, unsigned workers, bool timing)
{
  std::uint64_t const k = fl.u64("k");
  if (k < 1)
    throw UsageError("--k must be positive");
  Orientation orient;
  try {
    orient = parse_orientation(fl.str("orientation"));
  } catch (std::invalid_argument const &e) {
    throw UsageError(e.what());
  }
  std::string const algo = fl.str("algo");
  if (algo != "exact" && algo != "brute" && algo != "local")
    throw UsageError("--algo must be exact, brute or local");

  SearchReport rep;
  if (algo == "exact") {
    ApproxSpec const spec = spec_from_flags(fl);
    if (spec.family != Family::Z2 || !spec.closed_form)
      throw std::domain_error("exact needs a z2 translation problem");
    rep = exact_report(spec.params.n, spec.params.p, spec.params.q, k);
  } else {
    ConjProblem prob;
    if (fl.has("alpha") || fl.has("beta")) {
      prob = ConjProblem::make(perm_from_json(unwrap(read_json_file(fl.str("alpha")))),
                               perm_from_json(unwrap(read_json_file(fl.str("beta")))), k, orient);
    } else {
      ApproxSpec const spec = spec_from_flags(fl);
      prob = spec_problem(spec, k);
      prob.orientation = orient;
    }
    if (fl.on("flip"))
      prob = sign_flip(prob);
    if (algo == "brute") {
      rep = brute_force(prob, static_cast<std::size_t>(fl.u64("cap")));
    } else {
      LocalSearchOptions opts;
      opts.seed = em.cfg.seed;
      opts.iters = fl.u64("iters");
      opts.restarts = fl.u64("restarts");
      opts.workers = workers;
      rep = local_search(prob, opts);
    }
  }
  if (em.csv())
    em.table(to_csv(rep, timing));
  else
    em.json(to_json(rep, timing));
  return 0;
}

int cmd_defect(Flags const &fl, Emitter const &em)
{
  ApproxSpec const spec = spec_from_flags(fl);
  Perm const f = perm_from_json(unwrap(read_json_file(fl.str("perm"))));
  Json const pj = unwrap(read_json_file(fl.str("pairs")));
  if (!pj.is_array())
    throw FormatError("--pairs file must hold a list of [b, phi b] pairs");
  std::vector<std::pair<Element, Element>> pairs;
  for (auto const &p : pj) {
    if (!p.is_array() || p.size() != 2)
      throw FormatError("each pair is [b, phi b]");
    pairs.emplace_back(element_or_word(p[0], spec.group()), element_or_word(p[1], spec.group()));
  }
  Fraction const d = higman_defect(spec, f, pairs);
  if (em.csv())
    em.table({{"defect", "defect_value"}, {{d.str(), std::to_string(d.to_double())}}});
  else
    em.json(Json{{"defect", to_json(d)}, {"pairs", pairs.size()}});
  return 0;
}

int cmd_amplify(Flags const &fl, Emitter const &em)
{
  Perm const f = perm_from_json(unwrap(read_json_file(fl.str("perm"))));
  std::int64_t const n = fl.i64("target-n");
  if (n < 1)
    throw UsageError("--target-n must be positive");
  Perm const g = amplify(f, static_cast<std::size_t>(n));
  if (em.csv()) {
    std::string s;
    for (std::size_t x = 0; x < g.degree(); ++x)
      s += (x ? " " : "") + std::to_string(g(static_cast<Point>(x)));
    em.table({{"n", "f"}, {{std::to_string(n), s}}});
  } else {
    em.json(to_json(g));
  }
  return 0;
}

int cmd_align(Flags const &fl, Emitter const &em)
{
  ApproxSpec const s1 = spec_from_flags(fl, "spec1");
  ApproxSpec const s2 = spec_from_flags(fl, "spec2");
  std::int64_t const L = fl.i64("ball");
  if (L < 0 || L > 8)
    throw UsageError("--ball must be in [0, 8]");
  std::vector<Element> S;
  for (auto const &e : ball(s1.group(), static_cast<int>(L)).entries)
    S.push_back(s1.family == Family::Metabelian ? Element{FreeWord{e.word}} : e.element);
  AlignmentReport const rep = align(s1, s2, S, em.cfg.seed, fl.u64("iters"));
  if (em.csv())
    em.table(to_csv(rep));
  else
    em.json(to_json(rep));
  return 0;
}

std::vector<std::int64_t> table_from_file(std::string const &path)
{
  Json const j = unwrap(read_json_file(path));
  if (!j.is_array())
    throw FormatError("'" + path + "' must hold a list of integers");
  std::vector<std::int64_t> out;
  for (auto const &v : j) {
    if (!v.is_number_integer())
      throw FormatError("'" + path + "' must hold a list of integers");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

int cmd_higman(Flags const &fl, Emitter const &em)
{
  std::int64_t const p = fl.i64("p");
  bool const random = fl.on("random");
  auto table = [&](std::string const &flag, std::uint64_t stream) {
    if (fl.has(flag))
      return table_from_file(fl.str(flag));
    if (!random)
      throw UsageError("give --" + flag + " FILE or --random");
    if (!is_prime(p))
      throw std::invalid_argument("make_action: p = " + std::to_string(p) + " is not prime");
    return random_table(p, derive_seed(em.cfg.seed, stream));
  };
  std::vector<std::int64_t> ft = table("f-table", 0);
  std::vector<std::int64_t> lt = table("lambda-table", 1);
  ActionTable const act = make_action(p, std::move(ft), std::move(lt));

  std::optional<RelationReport> rel;
  if (fl.on("check"))
    rel = verify_action(act, fl.i64("window"));
  std::int64_t const depth = fl.i64("probe-depth");
  std::vector<BallEntry> probe = injectivity_probe(act, static_cast<int>(depth));

  bool const ok = !rel || rel->pass;
  if (em.csv()) {
    CsvTable t{{"p", "window", "relation", "pass", "witness"}, {}};
    if (rel)
      t = to_csv(*rel);
    if (depth > 0)
      t.rows.push_back({std::to_string(p), "", "injectivity probe depth " + std::to_string(depth),
                        probe.empty() ? "true" : "false", ""});
    for (auto const &e : probe)
      t.rows.push_back({std::to_string(p), "", "acts trivially: " + e.word.str(), "false", ""});
    em.table(t);
  } else {
    Json probe_j = Json::array();
    for (auto const &e : probe)
      probe_j.push_back(Json{{"word", e.word.str()}, {"element", to_json(e.element)}});
    em.json(Json{{"action", to_json(act)},
                 {"relations", rel ? to_json(*rel) : Json(nullptr)},
                 {"probe_depth", depth},
                 {"probe", probe_j}});
  }
  return ok ? 0 : 1;
}

int cmd_heuristic(Flags const &fl, Emitter const &em)
{
  std::int64_t const n = fl.i64("n"), k = fl.i64("k");
  if (n < 1 || k < 2)
    throw UsageError("heuristic needs n >= 1 and k >= 2");
  HeuristicReport const r = heuristic_report(static_cast<std::size_t>(n), static_cast<std::uint64_t>(k),
                                             fl.frac("eps"), fl.frac("eps-prime"));
  if (em.csv())
    em.table(to_csv(r));
  else
    em.json(to_json(r));
  return 0;
}

int cmd_poly_check(Flags const &fl, Emitter const &em)
{
  std::int64_t const n = fl.i64("n"), m = fl.i64("m"), C = fl.i64("C");
  PolyCheck const r = check_poly_condition(n, m, C);
  if (em.csv()) {
    std::string w;
    if (r.witness)
      for (std::size_t i = 0; i < r.witness->size(); ++i)
        w += (i ? " " : "") + std::to_string((*r.witness)[i]);
    em.table({{"n", "m", "C", "holds", "via_fast_path", "witness"},
              {{std::to_string(n), std::to_string(m), std::to_string(C), r.holds ? "true" : "false",
                r.via_fast_path ? "true" : "false", w}}});
  } else {
    em.json(to_json(r));
  }
  return 0;
}

int cmd_heis_fixed(Flags const &fl, Emitter const &em)
{
  std::int64_t const n = fl.i64("n"), lam = fl.i64("lam"), mu = fl.i64("mu"), nu = fl.i64("nu");
  HeisFixedPoints const r = heis_fixed_bound(n, lam, mu, nu);
  if (em.csv())
    em.table({{"n", "lam", "mu", "nu", "count", "bound", "status"},
              {{std::to_string(n), std::to_string(lam), std::to_string(mu), std::to_string(nu),
                std::to_string(r.count), r.bound.str(), std::string(to_string(r.status))}}});
  else
    em.json(to_json(r));
  return r.status == BoundStatus::Violated ? 1 : 0;
}

} // namespace

Json to_json(ExperimentConfig const &c)
{
  Json flags = Json::object();
  for (auto const &[k, v] : c.flags)
    flags[k] = v;
  return Json{{"subcommand", c.subcommand}, {"flags", flags}, {"seed", c.seed}, {"output", c.output}};
}

ExperimentConfig config_from_json(Json const &j)
{
  if (!j.is_object())
    throw FormatError("a config is an object");
  static std::set<std::string> const keys{"subcommand", "flags", "seed", "output", "schema"};
  for (auto const &[k, v] : j.items())
    if (!keys.count(k))
      throw FormatError("unknown config key '" + k + "'");
  ExperimentConfig c;
  if (!j.contains("subcommand") || !j["subcommand"].is_string())
    throw FormatError("config needs a subcommand");
  c.subcommand = j["subcommand"].get<std::string>();
  CommandDef const *def = find_command(c.subcommand);
  if (!def)
    throw FormatError("unknown subcommand '" + c.subcommand + "'");
  if (j.contains("flags")) {
    if (!j["flags"].is_object())
      throw FormatError("config flags must be an object");
    for (auto const &[k, v] : j["flags"].items()) {
      bool known = false;
      for (auto const &fd : def->flags)
        known = known || fd.name == k;
      if (!known)
        throw FormatError("subcommand " + c.subcommand + " has no flag '" + k + "'");
      if (!v.is_string())
        throw FormatError("config flag '" + k + "' must be a string");
      c.flags[k] = v.get<std::string>();
    }
  }
  for (auto const &fd : def->flags)
    if (!c.flags.count(fd.name) && !fd.fallback.empty())
      c.flags[fd.name] = fd.fallback;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned())
      throw FormatError("config seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output")) {
    if (!j["output"].is_string())
      throw FormatError("config output must be a string");
    c.output = j["output"].get<std::string>();
  }
  return c;
}

std::vector<std::string> subcommands()
{
  std::vector<std::string> out;
  for (auto const &c : commands())
    out.push_back(c.name);
  return out;
}

int execute(ExperimentConfig const &cfg, unsigned workers, bool timing, std::ostream &out, std::ostream &err)
{
  std::ofstream file;
  std::ostream *sink = &out;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      err << "error: cannot write '" << cfg.output << "'\n";
      return 1;
    }
    sink = &file;
  }
  Flags const fl{cfg};
  Emitter const em{cfg, *sink};
  try {
    std::string const fmt = fl.str("format");
    if (fmt != "json" && fmt != "csv")
      throw UsageError("--format must be json or csv");
    std::string const &s = cfg.subcommand;
    if (s == "count-orders")
      return cmd_count_orders(fl, em);
    if (s == "make-approx")
      return cmd_make_approx(fl, em);
    if (s == "verify")
      return cmd_verify(fl, em);
    if (s == "search")
      return cmd_search(fl, em, workers, timing);
    if (s == "defect")
      return cmd_defect(fl, em);
    if (s == "amplify")
      return cmd_amplify(fl, em);
    if (s == "align")
      return cmd_align(fl, em);
    if (s == "higman-action")
      return cmd_higman(fl, em);
    if (s == "heuristic")
      return cmd_heuristic(fl, em);
    if (s == "poly-check")
      return cmd_poly_check(fl, em);
    if (s == "heis-fixed")
      return cmd_heis_fixed(fl, em);
    throw UsageError("unknown subcommand '" + s + "'");
  } catch (UsageError const &e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (std::exception const &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Permutation approximations of groups: constructions, checks and searches."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
  std::int64_t seed = 0;
  std::string output;
  std::int64_t workers = 0;
  bool timing = false;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--seed", seed, "random seed (default 0)");
    sub->add_option("--output", output, "write data to this file instead of standard output");
    sub->add_option("--workers", workers, "worker threads (0: all cores); never changes the output");
    sub->add_flag("--timing", timing, "also report elapsed time (output is then not reproducible)");
  };

  for (auto const &def : commands()) {
    CLI::App *sub = app.add_subcommand(def.name, def.help);
    for (auto const &fd : def.flags) {
      std::string const help = fd.fallback.empty() ? fd.help : fd.help + " (default " + fd.fallback + ")";
      if (fd.is_switch)
        sub->add_flag("--" + fd.name, switches[def.name + "/" + fd.name], help);
      else
        sub->add_option("--" + fd.name, values[def.name + "/" + fd.name], help);
    }
    add_common(sub);
  }
  std::string replay_path;
  CLI::App *replay = app.add_subcommand("replay", "Run a saved config (or an output record's config) again");
  replay->add_option("--config", replay_path, "config file")->required();
  replay->add_option("--workers", workers, "worker threads (0: all cores)");
  replay->add_flag("--timing", timing, "also report elapsed time");

  std::vector<char const *> argv{"sofic"};
  for (auto const &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (CLI::ParseError const &e) {
    int const code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (workers < 0) {
    err << "error: --workers must be non-negative\n";
    return 2;
  }

  ExperimentConfig cfg;
  if (replay->parsed()) {
    try {
      Json j = read_json_file(replay_path);
      if (j.is_object() && j.contains("config"))
        j = j.at("config");
      cfg = config_from_json(j);
    } catch (std::exception const &e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  } else {
    CLI::App *sub = app.get_subcommands().front();
    CommandDef const *def = find_command(sub->get_name());
    cfg.subcommand = def->name;
    for (auto const &fd : def->flags) {
      std::string const key = def->name + "/" + fd.name;
      if (fd.is_switch) {
        if (switches[key])
          cfg.flags[fd.name] = "true";
      } else if (sub->count("--" + fd.name)) {
        cfg.flags[fd.name] = values[key];
      } else if (!fd.fallback.empty()) {
        cfg.flags[fd.name] = fd.fallback;
      }
    }
    if (seed < 0) {
      err << "error: --seed must be non-negative\n";
      return 2;
    }
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.output = output;
  }
  return execute(cfg, static_cast<unsigned>(workers), timing, out, err);
}

} // namespace sofic::cli
