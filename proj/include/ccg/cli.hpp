#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ccg/fixtures.hpp"
#include "ccg/io.hpp"
#include "ccg/random.hpp"

namespace ccg::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInputError = 2,
  kExitNone = 3,
  kExitPrecondition = 4,
  kExitFixtureFailure = 5,
};

/// Machine-readable command output. Human output is rendered from it.
struct Report {
  std::string command;
  std::string input_digest;
  Json result;
  std::optional<double> elapsed_ms;

  friend bool operator==(const Report&, const Report&) = default;
};

Json report_to_json(const Report& report);
/// Throws Error(ParseError) on schema mismatch.
Report report_from_json(const Json& doc);

/// Plain-text rendering of a report; depends only on the report.
std::string render_text(const Report& report);

struct CommandOutcome {
  Report report;
  int exit_code = kExitOk;
};

struct Context {
  Limits limits;
  unsigned threads = 1;
};

/// Reads CCG_SIZE_LIMIT when set; throws Error(InvalidParams) for malformed values.
Limits limits_from_environment();

/// Maps library errors onto exit codes.
int exit_code_for(ErrorCode code);

CommandOutcome cmd_solve(const GameFile& file, std::string_view method, const Context& ctx);
CommandOutcome cmd_potential(const GameFile& file, const Context& ctx);
CommandOutcome cmd_matrix(const GameFile& file, const Context& ctx);
CommandOutcome cmd_examples(std::string_view which, const Context& ctx);

struct GenerateParams {
  std::size_t players = 4;
  std::size_t resources = 2;
  std::uint64_t seed = 1;
  CostClass cost_class = CostClass::Monotone;
  std::size_t max_block = 2;
  bool theorem2_shape = false;
};

GameFile cmd_generate(const GenerateParams& params);

struct ExperimentParams {
  std::string kind;  // theorem1 | theorem2 | pairs-vs-triples
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::size_t max_players = 6;
  std::size_t max_resources = 4;
};

CommandOutcome cmd_experiment(const ExperimentParams& params, const Context& ctx);

/// The worked-example fixture a game file reproduces, if any (examples 2 and 3 by
/// equality, example 4 by shape).
std::optional<Fixture> known_fixture(const GameFile& file);

}  // namespace ccg::cli
