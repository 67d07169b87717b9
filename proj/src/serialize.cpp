#include "sofic/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sofic
{

namespace
{

template<typename T>
T get(Json const &j, char const *key)
{
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (nlohmann::json::exception const &e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

std::string quad_str(Quad const &q)
{
  return "(" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "," + std::to_string(q[2]) + "," +
         std::to_string(q[3]) + ")";
}

std::string fraction_csv(Fraction const &f) { return f.str(); }

std::string perm_csv(Perm const &f)
{
  std::string out;
  for (std::size_t x = 0; x < f.degree(); ++x)
    out += (x ? " " : "") + std::to_string(f(static_cast<Point>(x)));
  return out;
}

std::string double_str(double v)
{
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

} // namespace

Json to_json(BigInt const &v) { return v.str(); }

BigInt bigint_from_json(Json const &j)
{
  if (j.is_number_integer())
    return BigInt(j.get<std::int64_t>());
  if (!j.is_string())
    throw FormatError("expected an integer or a decimal string");
  std::string const s = j.get<std::string>();
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size())
    throw FormatError("empty integer '" + s + "'");
  for (std::size_t c = i; c < s.size(); ++c)
    if (s[c] < '0' || s[c] > '9')
      throw FormatError("not an integer: '" + s + "'");
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

Json to_json(Fraction const &f) { return Json{{"num", f.num()}, {"den", f.den()}}; }

Fraction fraction_from_json(Json const &j)
{
  if (j.is_string())
    return Fraction::parse(j.get<std::string>());
  if (j.is_number_integer())
    return Fraction(j.get<std::int64_t>());
  return Fraction(get<std::int64_t>(j, "num"), get<std::int64_t>(j, "den"));
}

Json to_json(Perm const &f)
{
  Json j = Json::array();
  for (Point y : f.images())
    j.push_back(y);
  return j;
}

Perm perm_from_json(Json const &j)
{
  if (!j.is_array())
    throw FormatError("a permutation is an array of images");
  std::vector<Point> images;
  images.reserve(j.size());
  for (auto const &v : j) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      throw FormatError("permutation images must be non-negative integers");
    images.push_back(v.get<Point>());
  }
  try {
    return Perm::from_images(std::move(images));
  } catch (std::invalid_argument const &e) {
    throw FormatError(e.what());
  }
}

Json to_json(GenWord const &w)
{
  Json j = Json::array();
  for (Letter const &l : w.letters())
    j.push_back(Json::array({std::string(1, l.gen), l.exp}));
  return j;
}

GenWord word_from_json(Json const &j)
{
  if (j.is_string())
    return GenWord::parse(j.get<std::string>());
  if (!j.is_array())
    throw FormatError("a word is a list of [generator, exponent] pairs or a string");
  std::vector<Letter> letters;
  for (auto const &l : j) {
    if (!l.is_array() || l.size() != 2 || !l[0].is_string() || l[0].get<std::string>().size() != 1 ||
        !l[1].is_number_integer())
      throw FormatError("bad letter " + l.dump());
    letters.push_back({l[0].get<std::string>()[0], l[1].get<std::int64_t>()});
  }
  try {
    return GenWord::from_letters(letters);
  } catch (std::invalid_argument const &e) {
    throw FormatError(e.what());
  }
}

Json to_json(Element const &x)
{
  Json j;
  j["family"] = std::string(family_tag(family_of(x)));
  std::visit(
      [&j](auto const &e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Z2Elem>) {
          j["lam"] = to_json(e.lam);
          j["mu"] = to_json(e.mu);
        } else if constexpr (std::is_same_v<T, HeisElem>) {
          j["lam"] = to_json(e.lam);
          j["mu"] = to_json(e.mu);
          j["nu"] = to_json(e.nu);
        } else if constexpr (std::is_same_v<T, BSElem>) {
          j["m"] = e.m;
          j["num"] = to_json(e.num);
          j["den_exp"] = e.den_exp;
          j["pow"] = e.pow;
        } else if constexpr (std::is_same_v<T, WreathElem>) {
          Json poly = Json::array();
          for (auto const &[i, c] : e.poly)
            poly.push_back(Json::array({i, to_json(c)}));
          j["poly"] = poly;
          j["pow"] = e.pow;
        } else {
          j["word"] = to_json(e.word);
        }
      },
      x);
  return j;
}

Element element_from_json(Json const &j)
try {
  Family const fam = [&] {
    try {
      return parse_family(get<std::string>(j, "family"));
    } catch (std::invalid_argument const &e) {
      throw FormatError(e.what());
    }
  }();
  switch (fam) {
  case Family::Z2:
    return Z2Elem{bigint_from_json(j.at("lam")), bigint_from_json(j.at("mu"))};
  case Family::Heisenberg:
    return HeisElem{bigint_from_json(j.at("lam")), bigint_from_json(j.at("mu")), bigint_from_json(j.at("nu"))};
  case Family::BaumslagSolitar: {
    BSElem e{get<std::int64_t>(j, "m"), bigint_from_json(j.at("num")), get<std::int64_t>(j, "den_exp"),
             get<std::int64_t>(j, "pow")};
    if (e.m > -2 && e.m < 2)
      throw FormatError("BS(1,m) needs |m| >= 2");
    if (e.den_exp < 0 || (e.den_exp > 0 && e.num % e.m == 0))
      throw FormatError("BS(1,m) element is not in normal form");
    return e;
  }
  case Family::Wreath: {
    WreathElem e;
    e.pow = get<std::int64_t>(j, "pow");
    for (auto const &t : j.at("poly")) {
      if (!t.is_array() || t.size() != 2)
        throw FormatError("poly entries are [exponent, coefficient]");
      BigInt c = bigint_from_json(t[1]);
      if (c == 0)
        throw FormatError("poly must not store zero coefficients");
      if (!e.poly.emplace(t[0].get<std::int64_t>(), std::move(c)).second)
        throw FormatError("repeated exponent in poly");
    }
    return e;
  }
  case Family::Metabelian: {
    GenWord w = word_from_json(j.at("word"));
    if (w.uses('t'))
      throw FormatError("free metabelian words use only a and b");
    return FreeWord{std::move(w)};
  }
  }
  throw FormatError("unreachable family");
}
catch (nlohmann::json::exception const &e)
{
  throw FormatError(e.what());
}

Json to_json(ApproxSpec const &spec)
{
  return Json{{"family", std::string(family_tag(spec.family))},
              {"params", {{"n", spec.params.n}, {"p", spec.params.p}, {"q", spec.params.q}, {"m", spec.params.m}}},
              {"point_set", spec.point_set()},
              {"closed_form", spec.closed_form},
              {"gen_a", to_json(spec.gen_a)},
              {"gen_b", to_json(spec.gen_b)}};
}

ApproxSpec spec_from_json(Json const &j)
try {
  Family fam;
  try {
    fam = parse_family(get<std::string>(j, "family"));
  } catch (std::invalid_argument const &e) {
    throw FormatError(e.what());
  }
  Json const &p = j.at("params");
  ApproxParams params;
  params.n = get<std::int64_t>(p, "n");
  if (p.contains("p"))
    params.p = get<std::int64_t>(p, "p");
  if (p.contains("q"))
    params.q = get<std::int64_t>(p, "q");
  if (p.contains("m"))
    params.m = get<std::int64_t>(p, "m");
  ApproxSpec spec;
  try {
    spec = make_approx(fam, params);
  } catch (std::invalid_argument const &e) {
    throw FormatError(e.what());
  }
  if (j.contains("gen_a") || j.contains("gen_b")) {
    Perm a = perm_from_json(j.at("gen_a"));
    Perm b = perm_from_json(j.at("gen_b"));
    if (a.degree() != b.degree())
      throw FormatError("generator images have different degrees");
    bool const same = a == spec.gen_a && b == spec.gen_b;
    spec.gen_a = std::move(a);
    spec.gen_b = std::move(b);
    spec.closed_form = same;
  }
  return spec;
}
catch (nlohmann::json::exception const &e)
{
  throw FormatError(e.what());
}

Json to_json(ConjProblem const &p)
{
  return Json{{"n", p.n},
              {"k", p.k},
              {"orientation", std::string(to_string(p.orientation))},
              {"alpha", to_json(p.alpha)},
              {"beta", to_json(p.beta)}};
}

ConjProblem problem_from_json(Json const &j)
try {
  Orientation o = Orientation::Forward;
  if (j.contains("orientation"))
    o = parse_orientation(get<std::string>(j, "orientation"));
  try {
    return ConjProblem::make(perm_from_json(j.at("alpha")), perm_from_json(j.at("beta")),
                             get<std::uint64_t>(j, "k"), o);
  } catch (std::invalid_argument const &e) {
    throw FormatError(e.what());
  }
}
catch (nlohmann::json::exception const &e)
{
  throw FormatError(e.what());
}

Json to_json(VerifyReport const &r)
{
  Json j{{"delta", to_json(r.delta)},
         {"worst_hom_defect", to_json(r.worst_hom_defect)},
         {"hom_witness", nullptr},
         {"worst_id_closeness", to_json(r.worst_id_closeness)},
         {"id_witness", nullptr},
         {"pairs_checked", r.pairs_checked},
         {"elements_checked", r.elements_checked},
         {"pass", r.pass}};
  if (r.hom_witness)
    j["hom_witness"] = Json::array({to_json(r.hom_witness->first), to_json(r.hom_witness->second)});
  if (r.id_witness)
    j["id_witness"] = to_json(*r.id_witness);
  return j;
}

Json to_json(SearchReport const &r, bool with_timing)
{
  Json j{{"problem", to_json(r.problem)},
         {"algorithm", r.algorithm},
         {"seed", r.seed},
         {"f", to_json(r.f)},
         {"order_of_f", r.order_of_f},
         {"agreement_count", r.agreement_count},
         {"agreement_fraction", to_json(r.agreement_fraction)},
         {"iterations", r.iterations}};
  if (with_timing)
    j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

Json to_json(AlignmentReport const &r)
{
  Json dist = Json::array();
  for (std::size_t i = 0; i < r.elements.size(); ++i)
    dist.push_back(Json{{"element", to_json(r.elements[i])}, {"distance", to_json(r.distances[i])}});
  return Json{{"tau", to_json(r.tau)},
              {"distances", dist},
              {"max_distance", to_json(r.max_distance)},
              {"seed", r.seed},
              {"iterations", r.iterations}};
}

Json to_json(HeisFixedPoints const &r)
{ return Json{{"count", r.count}, {"bound", to_json(r.bound)}, {"status", std::string(to_string(r.status))}}; }

Json to_json(PolyCheck const &r)
{
  Json j{{"holds", r.holds}, {"via_fast_path", r.via_fast_path}, {"witness", nullptr}};
  if (r.witness)
    j["witness"] = *r.witness;
  return j;
}

Json to_json(RelationReport const &r)
{
  Json checks = Json::array();
  for (auto const &c : r.checks) {
    Json cj{{"name", c.name}, {"pass", c.pass}, {"witness", nullptr}};
    if (c.witness)
      cj["witness"] = std::vector<std::int64_t>(c.witness->begin(), c.witness->end());
    checks.push_back(cj);
  }
  Json conj;
  char const names[4] = {'a', 'b', 'c', 'd'};
  for (int i = 0; i < 4; ++i)
    conj[std::string(1, names[i])] = std::string(1, r.t_conjugates[i]);
  return Json{{"p", r.p},
              {"window", r.window},
              {"t_order_ok", r.t_order_ok},
              {"t_conjugates", conj},
              {"t_cycle_ok", r.t_cycle_ok},
              {"checks", checks},
              {"pass", r.pass}};
}

std::string real_str(Real const &x, int digits)
{
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

Json to_json(HeuristicReport const &r)
{
  Json j{{"n", r.n},
         {"k", r.k},
         {"eps", to_json(r.eps)},
         {"eps_prime", to_json(r.eps_prime)},
         {"count", to_json(r.count)},
         {"log_P", real_str(r.log_P)},
         {"log_K", real_str(r.log_K)},
         {"log_PK", real_str(r.log_PK)},
         {"log_PK_negative", r.log_PK < 0},
         {"ratio", real_str(r.ratio)},
         {"k4_coefficient", nullptr},
         {"k4_exponent", nullptr}};
  if (r.k4_coefficient)
    j["k4_coefficient"] = to_json(*r.k4_coefficient);
  if (r.k4_exponent)
    j["k4_exponent"] = real_str(*r.k4_exponent);
  return j;
}

Json to_json(ActionTable const &act)
{
  return Json{{"p", act.p},     {"f_table", act.f_table}, {"lambda_table", act.lambda_table},
              {"t", to_json(act.t)}, {"a", to_json(act.a)},      {"b", to_json(act.b)},
              {"c", to_json(act.c)}, {"d", to_json(act.d)}};
}

ActionTable action_from_json(Json const &j)
try {
  ActionTable act;
  try {
    act = make_action(get<std::int64_t>(j, "p"), get<std::vector<std::int64_t>>(j, "f_table"),
                      get<std::vector<std::int64_t>>(j, "lambda_table"));
  } catch (std::invalid_argument const &e) {
    throw FormatError(e.what());
  }
  // Stored permutations are kept as given so that verify_action can audit them.
  if (j.contains("t"))
    act.t = perm_from_json(j.at("t"));
  if (j.contains("a"))
    act.a = perm_from_json(j.at("a"));
  if (j.contains("b"))
    act.b = perm_from_json(j.at("b"));
  if (j.contains("c"))
    act.c = perm_from_json(j.at("c"));
  if (j.contains("d"))
    act.d = perm_from_json(j.at("d"));
  return act;
}
catch (nlohmann::json::exception const &e)
{
  throw FormatError(e.what());
}

// ---------------------------------------------------------------------------
// CSV

void write_csv(std::ostream &os, CsvTable const &t)
{
  auto cell = [&os](std::string const &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
      os << s;
      return;
    }
    os << '"';
    for (char c : s)
      os << (c == '"' ? "\"\"" : std::string(1, c));
    os << '"';
  };
  auto line = [&](std::vector<std::string> const &row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i)
        os << ',';
      cell(row[i]);
    }
    os << '\n';
  };
  line(t.header);
  for (auto const &r : t.rows)
    line(r);
}

CsvTable to_csv(VerifyReport const &r)
{
  return CsvTable{{"delta", "worst_hom_defect", "hom_witness", "worst_id_closeness", "id_witness",
                   "pairs_checked", "elements_checked", "pass"},
                  {{fraction_csv(r.delta), fraction_csv(r.worst_hom_defect),
                    r.hom_witness ? to_string(r.hom_witness->first) + " " + to_string(r.hom_witness->second) : "",
                    fraction_csv(r.worst_id_closeness), r.id_witness ? to_string(*r.id_witness) : "",
                    std::to_string(r.pairs_checked), std::to_string(r.elements_checked),
                    r.pass ? "true" : "false"}}};
}

CsvTable to_csv(SearchReport const &r, bool with_timing)
{
  CsvTable t{{"n", "k", "orientation", "algorithm", "seed", "order_of_f", "agreement_count",
              "agreement_fraction", "agreement_value", "iterations", "f"},
             {{std::to_string(r.problem.n), std::to_string(r.problem.k),
               std::string(to_string(r.problem.orientation)), r.algorithm, std::to_string(r.seed),
               std::to_string(r.order_of_f), std::to_string(r.agreement_count), fraction_csv(r.agreement_fraction),
               double_str(r.agreement_fraction.to_double()), std::to_string(r.iterations), perm_csv(r.f)}}};
  if (with_timing) {
    t.header.push_back("elapsed_ms");
    t.rows[0].push_back(double_str(r.elapsed_ms));
  }
  return t;
}

CsvTable to_csv(AlignmentReport const &r)
{
  CsvTable t{{"element", "distance", "distance_value"}, {}};
  for (std::size_t i = 0; i < r.elements.size(); ++i)
    t.rows.push_back({to_string(r.elements[i]), fraction_csv(r.distances[i]),
                      double_str(r.distances[i].to_double())});
  t.rows.push_back({"max", fraction_csv(r.max_distance), double_str(r.max_distance.to_double())});
  return t;
}

CsvTable to_csv(RelationReport const &r)
{
  CsvTable t{{"p", "window", "relation", "pass", "witness"}, {}};
  for (auto const &c : r.checks)
    t.rows.push_back({std::to_string(r.p), std::to_string(r.window), c.name, c.pass ? "true" : "false",
                      c.witness ? quad_str(*c.witness) : ""});
  t.rows.push_back({std::to_string(r.p), std::to_string(r.window), "t-conjugation is a 4-cycle",
                    r.t_cycle_ok ? "true" : "false", ""});
  return t;
}

CsvTable to_csv(HeuristicReport const &r)
{
  return CsvTable{{"n", "k", "eps", "eps_prime", "log_P", "log_K", "log_PK", "ratio", "k4_coefficient",
                   "k4_exponent"},
                  {{std::to_string(r.n), std::to_string(r.k), fraction_csv(r.eps), fraction_csv(r.eps_prime),
                    real_str(r.log_P, 17), real_str(r.log_K, 17), real_str(r.log_PK, 17), real_str(r.ratio, 17),
                    r.k4_coefficient ? fraction_csv(*r.k4_coefficient) : "",
                    r.k4_exponent ? real_str(*r.k4_exponent, 17) : ""}}};
}

Json read_json_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (nlohmann::json::parse_error const &e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

} // namespace sofic
