#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sofic/serialize.hpp"

namespace sofic::cli
{

/// A fully resolved invocation. Replaying it reproduces the output byte for
/// byte; the worker count is deliberately not part of it.
struct ExperimentConfig
{
  std::string subcommand;
  std::map<std::string, std::string> flags;
  std::uint64_t seed = 0;
  std::string output; ///< empty means the output stream

  friend bool operator==(ExperimentConfig const &, ExperimentConfig const &) = default;
};

Json to_json(ExperimentConfig const &c);
/// Rejects unknown top-level keys, unknown subcommands and flags that the
/// subcommand does not take. Throws FormatError.
ExperimentConfig config_from_json(Json const &j);

/// Names of all subcommands, in help order.
std::vector<std::string> subcommands();

/// Entry point: args excludes the program name. Data goes to out (or the
/// --output file), diagnostics to err. Returns 0 on success, 1 when a
/// contract fails or the input is rejected, 2 on flag errors.
int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

/// Executes a resolved config. workers only affects speed.
int execute(ExperimentConfig const &cfg, unsigned workers, bool timing, std::ostream &out, std::ostream &err);

} // namespace sofic::cli
