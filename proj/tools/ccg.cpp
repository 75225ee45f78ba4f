// Command-line front end for coalitional congestion game analysis.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "ccg/cli.hpp"

namespace {

using namespace ccg;
using namespace ccg::cli;

int emit(CommandOutcome outcome, const std::string& format, bool timing, double elapsed_ms) {
  if (timing) outcome.report.elapsed_ms = elapsed_ms;
  if (format == "json") {
    std::cout << report_to_json(outcome.report).dump(2) << '\n';
  } else {
    std::cout << render_text(outcome.report);
  }
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coalitional congestion games: equilibria and exact potentials"};
  app.require_subcommand(1);

  std::string format = "text";
  bool timing = false;
  unsigned threads = 1;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", timing, "Include wall-clock time in the report");
  app.add_option("--threads", threads, "Worker threads for enumeration")->check(CLI::PositiveNumber);

  std::string file;
  std::string method = "brute";
  auto* solve = app.add_subcommand("solve", "Pure Nash equilibria of the coalitional game");
  solve->add_option("file", file, "Game file")->required();
  solve->add_option("--method", method, "brute or theorem1")->check(CLI::IsMember({"brute", "theorem1"}));

  auto* potential = app.add_subcommand("potential", "Exact potential or a four-cycle witness");
  potential->add_option("file", file, "Game file")->required();

  auto* matrix = app.add_subcommand("matrix", "Payoff matrix of a two-block game");
  matrix->add_option("file", file, "Game file")->required();

  std::string which = "all";
  auto* examples = app.add_subcommand("examples", "Check the worked examples");
  examples->add_option("--which", which, "2, 3, 4 or all")->check(CLI::IsMember({"2", "3", "4", "all"}));

  GenerateParams gen;
  std::string cost_class = "monotone";
  auto* generate = app.add_subcommand("generate", "Emit a random game file");
  generate->add_option("--players", gen.players, "Sub-agent count")->required();
  generate->add_option("--resources", gen.resources, "Resource count")->required();
  generate->add_option("--seed", gen.seed, "Random seed")->required();
  generate->add_option("--cost-class", cost_class, "linear, convex or monotone")
      ->check(CLI::IsMember({"linear", "convex", "monotone"}));
  generate->add_option("--max-block", gen.max_block, "Largest coalition size");
  generate->add_flag("--theorem2-shape", gen.theorem2_shape, "Force one pair and one singleton");

  ExperimentParams exp;
  auto* experiment = app.add_subcommand("experiment", "Randomized property experiments");
  experiment->add_option("kind", exp.kind, "theorem1, theorem2 or pairs-vs-triples")
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem2", "pairs-vs-triples"}));
  experiment->add_option("--trials", exp.trials, "Number of random instances");
  experiment->add_option("--seed", exp.seed, "Random seed");
  experiment->add_option("--max-players", exp.max_players, "Largest sub-agent count");
  experiment->add_option("--max-resources", exp.max_resources, "Largest resource count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    const Context ctx{limits_from_environment(), threads};
    if (*solve) return emit(cmd_solve(read_game_file(file), method, ctx), format, timing, elapsed());
    if (*potential) return emit(cmd_potential(read_game_file(file), ctx), format, timing, elapsed());
    if (*matrix) return emit(cmd_matrix(read_game_file(file), ctx), format, timing, elapsed());
    if (*examples) return emit(cmd_examples(which, ctx), format, timing, elapsed());
    if (*generate) {
      gen.cost_class = parse_cost_class(cost_class);
      const GameFile out = cmd_generate(gen);
      std::cout << emit_game_file(out.game, out.partition);
      return kExitOk;
    }
    if (*experiment) return emit(cmd_experiment(exp, ctx), format, timing, elapsed());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
