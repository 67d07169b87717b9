#include <doctest.h>

#include "sofic/rng.hpp"
#include "sofic/serialize.hpp"

#include <sstream>

using namespace sofic;

TEST_CASE("values round-trip")
{
  BigInt const big("-123456789012345678901234567890");
  CHECK(bigint_from_json(to_json(big)) == big);
  CHECK(bigint_from_json(Json(42)) == 42);
  CHECK_THROWS_AS(bigint_from_json(Json("12x")), FormatError);
  CHECK_THROWS_AS(bigint_from_json(Json("")), FormatError);

  Fraction const f(-6, 4);
  CHECK(fraction_from_json(to_json(f)) == f);
  CHECK(to_json(f).dump() == R"({"num":-3,"den":2})");
  CHECK(fraction_from_json(Json("3/9")) == Fraction(1, 3));

  Perm const p = sample_order_k(20, 6, 1);
  CHECK(perm_from_json(to_json(p)) == p);
  CHECK_THROWS_AS(perm_from_json(Json::parse("[0,0,1]")), FormatError);
  CHECK_THROWS_AS(perm_from_json(Json::parse("[0,-1]")), FormatError);
  CHECK_THROWS_AS(perm_from_json(Json::parse("{}")), FormatError);

  GenWord const w = GenWord::parse("a^2 b^-1 t a");
  CHECK(word_from_json(to_json(w)) == w);
  CHECK(word_from_json(Json("a2b-1ta")) == w);
  CHECK_THROWS_AS(word_from_json(Json::parse(R"([["q", 1]])")), FormatError);
}

TEST_CASE("elements round-trip for every family")
{
  Rng rng(3);
  for (GroupSpec const g : {GroupSpec{Family::Z2, 2}, GroupSpec{Family::Heisenberg, 2},
                            GroupSpec{Family::BaumslagSolitar, 3}, GroupSpec{Family::BaumslagSolitar, -2},
                            GroupSpec{Family::Wreath, 2}, GroupSpec{Family::Metabelian, 2}}) {
    for (int i = 0; i < 30; ++i) {
      std::vector<Letter> ls;
      for (int j = 0; j < 6; ++j)
        ls.push_back({rng.below(2) ? 'a' : 'b', static_cast<std::int64_t>(rng.below(7)) - 3});
      Element const x = eval_word(GenWord::from_letters(ls), g);
      CHECK(element_from_json(to_json(x)) == x);
      CHECK(element_from_json(Json::parse(to_json(x).dump())) == x);
    }
  }
}

TEST_CASE("malformed elements are rejected")
{
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"family":"nope"})")), FormatError);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"family":"z2","lam":"1"})")), FormatError);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"family":"bs","m":1,"num":"1","den_exp":0,"pow":0})")),
                  FormatError);
  // 4 / 2^1 is not reduced.
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"family":"bs","m":2,"num":"4","den_exp":1,"pow":0})")),
                  FormatError);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"family":"zwrz","poly":[[0,"0"]],"pow":0})")), FormatError);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"family":"zwrz","poly":[[0,"1"],[0,"2"]],"pow":0})")),
                  FormatError);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"family":"metab","word":"a t"})")), FormatError);
}

TEST_CASE("approximation specs round-trip")
{
  for (auto const &[fam, params] : std::vector<std::pair<Family, ApproxParams>>{
           {Family::Z2, {10, 2, 3, 2}},
           {Family::Heisenberg, {7, 1, 1, 2}},
           {Family::BaumslagSolitar, {11, 1, 1, 3}},
           {Family::Wreath, {13, 1, 1, 5}},
           {Family::Metabelian, {11, 2, 3, 2}}}) {
    ApproxSpec const s = make_approx(fam, params);
    ApproxSpec const back = spec_from_json(to_json(s));
    CHECK(back.family == s.family);
    CHECK(back.gen_a == s.gen_a);
    CHECK(back.gen_b == s.gen_b);
    CHECK(back.closed_form);
    CHECK(to_json(back).dump() == to_json(s).dump());
  }
  ApproxSpec const s = make_approx(Family::Z2, {10, 2, 3, 2});
  ApproxSpec const c = conjugate_spec(s, sample_order_k(10, 720, 2));
  ApproxSpec const back = spec_from_json(to_json(c));
  CHECK(back.gen_a == c.gen_a);
  CHECK_FALSE(back.closed_form);

  Json bad = to_json(s);
  bad["gen_a"] = to_json(Perm::identity(9));
  CHECK_THROWS_AS(spec_from_json(bad), FormatError);
  bad = to_json(s);
  bad["params"]["n"] = 0;
  CHECK_THROWS_AS(spec_from_json(bad), FormatError);
  bad = to_json(s);
  bad.erase("params");
  CHECK_THROWS_AS(spec_from_json(bad), FormatError);
}

TEST_CASE("conjugation problems round-trip")
{
  ConjProblem p = multiplier_problem(17, 3, 4);
  p.orientation = Orientation::Reverse;
  CHECK(problem_from_json(to_json(p)) == p);
  Json bad = to_json(p);
  bad["beta"] = to_json(Perm::identity(5));
  CHECK_THROWS_AS(problem_from_json(bad), FormatError);
  bad = to_json(p);
  bad["orientation"] = "sideways";
  CHECK_THROWS(problem_from_json(bad));
}

TEST_CASE("action tables keep stored perms for audit")
{
  ActionTable const act = make_action(3, {1, 2, 1}, {2, 1, 2});
  Json j = to_json(act);
  ActionTable const back = action_from_json(j);
  CHECK(back.a == act.a);
  CHECK(verify_action(back, 1).pass);
  j["lambda_table"][1] = 2;
  ActionTable const tampered = action_from_json(j);
  CHECK(tampered.a == act.a);
  CHECK_FALSE(verify_action(tampered, 1).pass);
  j["lambda_table"][1] = 0;
  CHECK_THROWS_AS(action_from_json(j), FormatError);
}

TEST_CASE("reports")
{
  SearchReport const r = exact_report(13, 1, 5, 4);
  Json const j = to_json(r);
  CHECK(j["agreement_count"] == 13);
  CHECK(j["f"] == to_json(r.f));
  CHECK_FALSE(j.contains("elapsed_ms"));
  CHECK(to_json(r, true).contains("elapsed_ms"));

  HeuristicReport const h = heuristic_report(4, 4, Fraction(0), Fraction(0));
  Json const hj = to_json(h);
  CHECK(hj["count"] == "16");
  CHECK(hj["log_P"].get<std::string>().substr(0, 10) == "-0.4054651");
  CHECK(real_str(Real(1) / 3, 5) == "0.33333");
}

TEST_CASE("csv")
{
  std::ostringstream os;
  write_csv(os, CsvTable{{"a", "b"}, {{"x,y", "say \"hi\""}, {"1", ""}}});
  CHECK(os.str() == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n1,\n");

  RelationReport const rel = verify_action(make_action(3, {1, 1, 1}, {1, 1, 1}), 1);
  CsvTable const t = to_csv(rel);
  CHECK(t.rows.size() == rel.checks.size() + 1);
  for (auto const &row : t.rows)
    CHECK(row.size() == t.header.size());
  CsvTable const s = to_csv(exact_report(13, 1, 5, 4), true);
  CHECK(s.header.back() == "elapsed_ms");
  CHECK(s.rows[0].size() == s.header.size());
}

TEST_CASE("reading files")
{ CHECK_THROWS_AS(read_json_file("/nonexistent/sofic.json"), FormatError); }
