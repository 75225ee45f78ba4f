#include <doctest.h>

#include <cstdlib>

#include "ccg/cli.hpp"
#include "ccg/equilibria.hpp"

using namespace ccg;
using namespace ccg::cli;

namespace {

const std::string kData = CCG_TEST_DATA;

ErrorCode parse_code(const std::string& text) {
  try {
    parse_game_file(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parse succeeded: " << text);
  return ErrorCode::FixtureFailure;
}

ErrorCode command_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::FixtureFailure;
}

}  // namespace

TEST_CASE("rationals in JSON") {
  CHECK(rational_to_json(Rational(3)) == Json(3));
  CHECK(rational_to_json(Rational(-7, 2)) == Json("-7/2"));
  CHECK(rational_from_json(Json("4/6")) == Rational(2, 3));
  CHECK(rational_from_json(Json(5)) == 5);
  CHECK_THROWS_AS(rational_from_json(Json(1.5)), Error);
  CHECK_THROWS_AS(rational_from_json(Json::array()), Error);
}

TEST_CASE("game files round trip") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + seed % 6;
    const auto g = random_game(seed, n, 1 + seed % 5, static_cast<CostClass>(seed % 3));
    const auto p = random_partition(seed, n, 1 + seed % n);
    const std::string text = emit_game_file(g, p);
    const auto back = parse_game_file(text);
    CHECK(back.game == g);
    CHECK(back.partition == p);
    CHECK(emit_game_file(back.game, back.partition) == text);
  }
  for (const auto& f : {example2(), example3()}) {
    const auto back = parse_game_file(emit_game_file(f.game, f.partition));
    CHECK(back.game == f.game);
    CHECK(back.partition == f.partition);
  }
}

TEST_CASE("parsing normalizes and defaults") {
  const auto f = parse_game_file(R"({"resources": ["X", "Y"], "players": 2,
      "costs": {"Y": [1, "5/2"], "X": [0, 1]},
      "strategies": {"2": [["Y"], ["X", "Y"]], "1": [["Y", "X"], ["X"]]}})");
  CHECK(f.partition == Partition::discrete(2));
  CHECK(f.game.resources() == std::vector<std::string>{"X", "Y"});
  CHECK(f.game.cost(1).values[1] == Rational(5, 2));
  CHECK(f.game.strategies(0) == std::vector<ResourceSet>{{0}, {0, 1}});
  CHECK(validate_game(f.game).empty());
}

TEST_CASE("malformed game files") {
  const std::string costs = R"("costs": {"A": [0, 1]})";
  CHECK(parse_code("[1, 2]") == ErrorCode::ParseError);
  CHECK(parse_code("{") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"players": 2, )" + costs + R"(, "strategies": "simple"})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"resources": ["A"], "players": 0, )" + costs + R"(, "strategies": "simple"})") ==
        ErrorCode::ParseError);
  CHECK(parse_code(R"({"resources": ["A"], "players": 2, "costs": {"A": [0, "x"]}, "strategies": "simple"})") ==
        ErrorCode::ParseError);
  CHECK(parse_code(R"({"resources": ["A", "A"], "players": 2, )" + costs + R"(, "strategies": "simple"})") ==
        ErrorCode::ParseError);
  CHECK(parse_code(R"({"resources": ["A"], "players": 2, )" + costs + R"(, "strategies": {"1": [["Q"]], "2": [["A"]]}})") ==
        ErrorCode::UnknownResource);
  CHECK(parse_code(R"({"resources": ["A"], "players": 2, )" + costs + R"(, "strategies": {"1": [["A"]]}})") ==
        ErrorCode::ParseError);
  CHECK(parse_code(R"({"resources": ["A"], "players": 2, )" + costs + R"(, "strategies": "simple", "partition": [[1], [1, 2]]})") ==
        ErrorCode::ParseError);
  CHECK(parse_code(R"({"resources": ["A"], "players": 2, )" + costs + R"(, "strategies": "simple", "partition": [[3]]})") ==
        ErrorCode::ParseError);

  // semantic problems survive parsing and are reported by validation
  const auto bad = parse_game_file(R"({"resources": ["A"], "players": 2, "costs": {"A": [2, 1]}, "strategies": "simple"})");
  CHECK_FALSE(validate_game(bad.game).empty());
  CHECK(command_code([&] { cmd_solve(bad, "brute", Context{}); }) == ErrorCode::DecreasingCost);
}

TEST_CASE("digest") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") == "af63dc4c8601ec8c");
  CHECK(digest("ab") != digest("ba"));
}

TEST_CASE("reports round trip through JSON") {
  const Report r{"solve", "0123456789abcdef", Json{{"method", "brute"}, {"equilibria", Json::array()}}, 2.5};
  CHECK(report_from_json(report_to_json(r)) == r);
  const Report untimed{"potential", "x", Json::object(), std::nullopt};
  CHECK_FALSE(report_to_json(untimed).contains("elapsed_ms"));
  CHECK(report_from_json(report_to_json(untimed)) == untimed);
  CHECK_THROWS_AS(report_from_json(Json{{"command", 1}}), Error);

  const auto outcome = cmd_solve(read_game_file(kData + "/example2_pairs.json"), "brute", Context{});
  CHECK(report_from_json(Json::parse(report_to_json(outcome.report).dump())) == outcome.report);
  CHECK(render_text(report_from_json(report_to_json(outcome.report))) == render_text(outcome.report));
}

TEST_CASE("solve") {
  const Context ctx;
  const auto ex2 = read_game_file(kData + "/example2.json");
  auto out = cmd_solve(ex2, "brute", ctx);
  CHECK(out.exit_code == kExitNone);
  CHECK(out.report.result["equilibria"].empty());
  CHECK(command_code([&] { cmd_solve(ex2, "theorem1", ctx); }) == ErrorCode::PreconditionViolated);
  CHECK(exit_code_for(ErrorCode::PreconditionViolated) == kExitPrecondition);

  const auto pairs = read_game_file(kData + "/example2_pairs.json");
  out = cmd_solve(pairs, "theorem1", ctx);
  CHECK(out.exit_code == kExitOk);
  CHECK(out.report.result["case"] == "case1");
  CHECK(out.report.result["verified"] == true);
  CHECK(out.report.result["result"] == Json::parse(R"([["A","B"],["A","B"]])"));

  out = cmd_solve(pairs, "brute", ctx);
  CHECK(out.exit_code == kExitOk);
  CHECK_FALSE(out.report.result["equilibria"].empty());
  CHECK(out.report.input_digest == cmd_solve(pairs, "brute", Context{{}, 4}).report.input_digest);
  CHECK(out.report.result == cmd_solve(pairs, "brute", Context{{}, 4}).report.result);
}

TEST_CASE("potential") {
  auto out = cmd_potential(read_game_file(kData + "/example4_nonlinear.json"), Context{});
  CHECK(out.exit_code == kExitNone);
  CHECK(out.report.result["has_potential"] == false);
  CHECK(out.report.result.contains("witness"));
  CHECK(out.report.result["theorem2"]["applicable"] == true);
  CHECK(out.report.result["theorem2"]["consistent"] == true);

  const auto lin = example4(1, 2, 3, 2, 4, 6);
  out = cmd_potential(GameFile{lin.game, lin.partition}, Context{});
  CHECK(out.exit_code == kExitOk);
  CHECK(out.report.result["table"].size() == 6);

  out = cmd_potential(read_game_file(kData + "/example3.json"), Context{});
  CHECK_FALSE(out.report.result.contains("theorem2"));
}

TEST_CASE("matrix") {
  const auto out = cmd_matrix(read_game_file(kData + "/example3.json"), Context{});
  const auto& r = out.report.result;
  CHECK(r["rows"].size() == 6);
  CHECK(r["columns"].size() == 3);
  CHECK(r["fixture"] == "example3");
  REQUIRE(r["annotations"].size() == 2);
  CHECK(r["annotations"][0]["status"] == "discrepancy");
  CHECK(r["annotations"][0]["printed"] == Json::parse("[-14, 8]"));
  CHECK(r["annotations"][0]["recomputed"] == Json::parse("[-14, -4]"));
  CHECK(r["annotations"][1]["recomputed"] == Json::parse("[-16, -8]"));

  const auto f = example2();
  const auto discrete = GameFile{f.game, Partition::discrete(4)};
  CHECK(command_code([&] { cmd_matrix(discrete, Context{}); }) == ErrorCode::NotTwoBlocks);
}

TEST_CASE("size limit") {
  const auto g = random_game(1, 6, 4, CostClass::Monotone);
  const GameFile big{g, Partition::discrete(6)};
  CHECK(command_code([&] { cmd_solve(big, "brute", Context{Limits{100}, 1}); }) == ErrorCode::SizeLimitExceeded);
  CHECK(exit_code_for(ErrorCode::SizeLimitExceeded) == kExitPrecondition);

  setenv("CCG_SIZE_LIMIT", "123", 1);
  CHECK(limits_from_environment().max_cells == 123);
  setenv("CCG_SIZE_LIMIT", "12x", 1);
  CHECK_THROWS_AS(limits_from_environment(), Error);
  unsetenv("CCG_SIZE_LIMIT");
  CHECK(limits_from_environment().max_cells == Limits{}.max_cells);
}

TEST_CASE("examples command") {
  const auto out = cmd_examples("all", Context{});
  CHECK(out.exit_code == kExitOk);
  CHECK(out.report.result["summary"]["fail"] == 0);
  CHECK(out.report.result["summary"]["discrepancy"] == 2);
}

TEST_CASE("generate is deterministic") {
  GenerateParams p;
  p.players = 5;
  p.resources = 3;
  p.seed = 9;
  p.max_block = 3;
  const auto a = cmd_generate(p);
  CHECK(a == cmd_generate(p));
  CHECK(a.partition.max_block_size() <= 3);
  p.seed = 10;
  CHECK_FALSE(a == cmd_generate(p));
}

TEST_CASE("experiments") {
  const Context ctx;
  for (const char* kind : {"theorem1", "theorem2", "pairs-vs-triples"}) {
    const auto out = cmd_experiment(ExperimentParams{kind, 30, 3, 5, 3}, ctx);
    CAPTURE(kind);
    CHECK(out.exit_code == kExitOk);
    CHECK(out.report.result["expectation_met"] == true);
    CHECK(out.report.result == cmd_experiment(ExperimentParams{kind, 30, 3, 5, 3}, ctx).report.result);
  }
  CHECK(command_code([&] { cmd_experiment(ExperimentParams{"nope", 3, 1, 4, 2}, ctx); }) == ErrorCode::InvalidParams);
}
