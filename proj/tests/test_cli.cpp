#include <doctest.h>

#include "sofic/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace sofic;
namespace fs = std::filesystem;

namespace
{

struct Run
{
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> const &args)
{
  std::ostringstream out, err;
  int const code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json result_of(Run const &r) { return Json::parse(r.out).at("result"); }

struct TempDir
{
  fs::path path;
  TempDir()
  {
    path = fs::temp_directory_path() / ("sofic_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(std::string const &name, std::string const &content = "") const
  {
    std::string const p = (path / name).string();
    if (!content.empty())
      std::ofstream(p) << content;
    return p;
  }
};

} // namespace

TEST_CASE("count-orders")
{
  Run const r = run({"count-orders", "--n", "4", "--k", "4"});
  CHECK(r.code == 0);
  Json const j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["result"]["count"] == "16");
  CHECK(j["config"]["subcommand"] == "count-orders");
  CHECK(result_of(run({"count-orders", "--n", "4", "--k", "2"}))["count"] == "10");
  CHECK(result_of(run({"count-orders", "--n", "3", "--k", "3"}))["count"] == "3");

  Run const csv = run({"count-orders", "--n", "4", "--k", "4", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("n,k,count,config\n4,4,16,", 0) == 0);
}

TEST_CASE("flag errors exit with 2")
{
  CHECK(run({"count-orders", "--n", "x", "--k", "4"}).code == 2);
  CHECK(run({"count-orders", "--k", "4"}).code == 2);
  CHECK(run({"count-orders", "--n", "4", "--k", "4", "--bogus", "1"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"search", "--group", "z2", "--n", "5", "--algo", "magic"}).code == 2);
  CHECK(run({"verify", "--group", "z2", "--n", "10", "--delta", "1/10", "--ball", "13"}).code == 2);
  CHECK(run({"count-orders", "--n", "4", "--k", "4", "--format", "xml"}).code == 2);
  CHECK(run({"count-orders", "--n", "4", "--k", "4", "--workers", "-1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("exact search")
{
  Run const r = run({"search", "--group", "z2", "--n", "13", "--p", "1", "--q", "5", "--k", "4", "--algo", "exact"});
  CHECK(r.code == 0);
  Json const j = result_of(r);
  CHECK(j["agreement_count"] == 13);
  CHECK(j["f"] == Json::parse("[0,5,10,2,7,12,4,9,1,6,11,3,8]"));
  CHECK(j["agreement_fraction"] == Json::parse(R"({"num":1,"den":1})"));
  CHECK(run({"search", "--group", "z2", "--n", "7", "--p", "1", "--q", "2", "--algo", "exact"}).code == 1);
  CHECK(run({"search", "--group", "bs", "--n", "7", "--m", "2", "--algo", "exact"}).code == 1);
}

TEST_CASE("verify exit codes")
{
  std::vector<std::string> base{"verify", "--group", "z2", "--n", "10", "--p", "2", "--q", "3", "--delta", "0.1"};
  auto with_ball = [&](std::string b) {
    auto a = base;
    a.insert(a.end(), {"--ball", b});
    return run(a);
  };
  CHECK(with_ball("2").code == 0);
  CHECK(with_ball("3").code == 0);
  Run const fail = with_ball("4");
  CHECK(fail.code == 1);
  CHECK(result_of(fail)["pass"] == false);
  CHECK(run({"verify", "--group", "z2", "--n", "101", "--p", "10", "--q", "1", "--ball", "3", "--delta", "0.1"}).code ==
        0);
  CHECK(run({"verify", "--group", "metab", "--n", "11", "--p", "2", "--q", "3", "--ball", "7", "--delta", "1/2"})
            .code == 2);
  Run const m = run({"verify", "--group", "metab", "--n", "101", "--p", "2", "--q", "3", "--ball", "1", "--delta",
                     "1/2"});
  CHECK(m.code == 0);
  CHECK(result_of(m)["elements_checked"] == 4);
}

TEST_CASE("local search output does not depend on the worker count")
{
  std::vector<std::string> args{"search", "--group", "bs", "--n", "41", "--m", "3", "--k", "4",
                                "--restarts", "5", "--seed", "7"};
  auto with = [&](std::string w) {
    auto a = args;
    a.insert(a.end(), {"--workers", w});
    return run(a);
  };
  Run const one = with("1"), three = with("3");
  CHECK(one.code == 0);
  CHECK(one.out == three.out);
  CHECK_FALSE(Json::parse(one.out)["config"]["flags"].contains("workers"));
  Run const timed = run({"search", "--group", "bs", "--n", "11", "--m", "3", "--timing"});
  CHECK(result_of(timed).contains("elapsed_ms"));
}

TEST_CASE("replay reproduces the output")
{
  TempDir const tmp;
  Run const first = run({"search", "--group", "z2", "--n", "17", "--p", "1", "--q", "2", "--seed", "3"});
  REQUIRE(first.code == 0);
  std::string const rec = tmp.file("record.json", first.out);
  Run const again = run({"replay", "--config", rec, "--workers", "2"});
  CHECK(again.code == 0);
  CHECK(again.out == first.out);

  std::string const cfg = tmp.file("config.json", Json::parse(first.out)["config"].dump());
  CHECK(run({"replay", "--config", cfg}).out == first.out);

  std::string const bad = tmp.file("bad.json", R"({"subcommand":"search","flags":{},"color":"red"})");
  CHECK(run({"replay", "--config", bad}).code == 2);
  std::string const badflag = tmp.file("badflag.json", R"({"subcommand":"search","flags":{"zzz":"1"}})");
  CHECK(run({"replay", "--config", badflag}).code == 2);
  CHECK(run({"replay", "--config", tmp.file("missing.json")}).code == 2);
}

TEST_CASE("config round trip")
{
  cli::ExperimentConfig c;
  c.subcommand = "heuristic";
  c.flags = {{"n", "100"}, {"k", "4"}, {"eps", "1/100"}, {"eps-prime", "1/100"}, {"format", "json"}};
  c.seed = 12;
  CHECK(cli::config_from_json(cli::to_json(c)) == c);
  // Defaults are filled in.
  cli::ExperimentConfig const d = cli::config_from_json(Json::parse(R"({"subcommand":"heuristic","flags":{"n":"5"}})"));
  CHECK(d.flags.at("k") == "4");
  CHECK(d.flags.at("format") == "json");
  CHECK_THROWS_AS(cli::config_from_json(Json::parse(R"({"subcommand":"nope"})")), FormatError);
  CHECK_THROWS_AS(cli::config_from_json(Json::parse(R"({"subcommand":"heuristic","flags":{"n":5}})")), FormatError);
  CHECK_THROWS_AS(cli::config_from_json(Json::parse(R"({"subcommand":"heuristic","seed":-1})")), FormatError);
  CHECK(cli::subcommands().size() == 11);
}

TEST_CASE("make-approx file feeds verify and search")
{
  TempDir const tmp;
  std::string const spec = tmp.file("spec.json");
  Run const made = run({"make-approx", "--group", "heis", "--n", "30", "--output", spec});
  CHECK(made.code == 0);
  CHECK(made.out.empty());
  Run const v = run({"verify", "--spec", spec, "--ball", "1", "--delta", "1/10"});
  CHECK(v.code == 0);
  CHECK(result_of(v)["pass"] == true);

  std::string const alpha = tmp.file("alpha.json", "[1,2,3,4,0]");
  std::string const beta = tmp.file("beta.json", "[2,3,4,0,1]");
  Run const s = run({"search", "--alpha", alpha, "--beta", beta, "--algo", "brute"});
  CHECK(s.code == 0);
  CHECK(result_of(s)["agreement_count"] == 5);

  std::string const perm = tmp.file("perm.json", "[1,0,2]");
  Run const a = run({"amplify", "--perm", perm, "--target-n", "7"});
  CHECK(result_of(a) == Json::parse("[1,0,2,4,3,5,6]"));
  CHECK(run({"amplify", "--perm", tmp.file("nothing.json"), "--target-n", "7"}).code == 1);
}

TEST_CASE("defect")
{
  TempDir const tmp;
  std::string const spec = tmp.file("spec.json");
  run({"make-approx", "--group", "z2", "--n", "13", "--p", "1", "--q", "5", "--output", spec});
  std::string const f = tmp.file("f.json", "[0,5,10,2,7,12,4,9,1,6,11,3,8]");
  std::string const pairs = tmp.file("pairs.json", R"([["b", "a"]])");
  Run const r = run({"defect", "--spec", spec, "--perm", f, "--pairs", pairs});
  CHECK(r.code == 0);
  CHECK(result_of(r)["defect"] == Json::parse(R"({"num":0,"den":1})"));
}

TEST_CASE("higman-action")
{
  TempDir const tmp;
  std::string const ones = tmp.file("ones.json", "[1,1,1]");
  Run const r = run({"higman-action", "--p", "3", "--f-table", ones, "--lambda-table", ones, "--check",
                     "--window", "2"});
  CHECK(r.code == 0);
  CHECK(result_of(r)["relations"]["pass"] == true);

  Run const rnd = run({"higman-action", "--p", "5", "--random", "--check", "--probe-depth", "2", "--seed", "4"});
  CHECK(rnd.code == 0);
  CHECK(rnd.out == run({"higman-action", "--p", "5", "--random", "--check", "--probe-depth", "2", "--seed", "4"}).out);
  CHECK(run({"higman-action", "--p", "4", "--random"}).code == 1);
  CHECK(run({"higman-action", "--p", "5"}).code == 2);

  Run const csv = run({"higman-action", "--p", "3", "--f-table", ones, "--lambda-table", ones, "--check",
                       "--format", "csv"});
  CHECK(csv.out.rfind("p,window,relation,pass,witness,config\n", 0) == 0);
}

TEST_CASE("heuristic, poly-check and heis-fixed")
{
  Run const h = run({"heuristic", "--n", "100", "--k", "4", "--eps", "0.01", "--eps-prime", "0.01"});
  CHECK(h.code == 0);
  CHECK(result_of(h)["k4_coefficient"] == Json::parse(R"({"num":-11,"den":50})"));

  Run const p = run({"poly-check", "--n", "15626", "--m", "5", "--C", "5"});
  CHECK(p.code == 0);
  CHECK(result_of(p)["holds"] == true);
  CHECK(result_of(run({"poly-check", "--n", "15624", "--m", "5", "--C", "5"}))["holds"] == false);

  CHECK(run({"heis-fixed", "--n", "10", "--lam", "2", "--mu", "1"}).code == 0);
  CHECK(result_of(run({"heis-fixed", "--n", "10", "--mu", "1"}))["status"] == "not-applicable");
}
