#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sofic/approx.hpp"
#include "sofic/conjsearch.hpp"
#include "sofic/groups.hpp"
#include "sofic/heuristic.hpp"
#include "sofic/higman.hpp"
#include "sofic/perm.hpp"

namespace sofic
{

using Json = nlohmann::ordered_json;

/// Parse errors from any from_json below.
struct FormatError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// Values. Big integers travel as decimal strings, rationals as {num, den}.
Json to_json(BigInt const &v);
BigInt bigint_from_json(Json const &j);

Json to_json(Fraction const &f);
Fraction fraction_from_json(Json const &j);

Json to_json(Perm const &f);
Perm perm_from_json(Json const &j);

Json to_json(GenWord const &w);
GenWord word_from_json(Json const &j);

Json to_json(Element const &x);
Element element_from_json(Json const &j);

// Records.
Json to_json(ApproxSpec const &spec);
/// Rebuilds the generator images and checks them against make_approx; a spec
/// whose images differ is accepted but loses its closed form.
ApproxSpec spec_from_json(Json const &j);

Json to_json(ConjProblem const &p);
ConjProblem problem_from_json(Json const &j);

Json to_json(VerifyReport const &r);
Json to_json(SearchReport const &r, bool with_timing = false);
Json to_json(AlignmentReport const &r);
Json to_json(HeisFixedPoints const &r);
Json to_json(PolyCheck const &r);
Json to_json(RelationReport const &r);
Json to_json(HeuristicReport const &r);

Json to_json(ActionTable const &act);
ActionTable action_from_json(Json const &j);

/// A flat table for --format csv.
struct CsvTable
{
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream &os, CsvTable const &t);

CsvTable to_csv(VerifyReport const &r);
CsvTable to_csv(SearchReport const &r, bool with_timing = false);
CsvTable to_csv(AlignmentReport const &r);
CsvTable to_csv(RelationReport const &r);
CsvTable to_csv(HeuristicReport const &r);

/// Decimal rendering of a high-precision real with the given significant digits.
std::string real_str(Real const &x, int digits = 30);

Json read_json_file(std::string const &path);

} // namespace sofic
