#include "ccg/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "ccg/equilibria.hpp"
#include "ccg/pair_ne.hpp"
#include "ccg/potential.hpp"
#include "ccg/strategic_form.hpp"

namespace ccg::cli {

namespace {

constexpr std::size_t kMatrixRenderBound = 256;
constexpr std::size_t kMaxReportedCounterexamples = 10;

std::string game_digest(const GameFile& file) {
  return digest(emit_game_file(file.game, file.partition));
}

Json labels_json(const StrategicForm& form, std::uint64_t index) {
  Json out = Json::array();
  for (std::size_t p = 0; p < form.players(); ++p) out.push_back(form.labels(p)[form.strategy_of(index, p)]);
  return out;
}

Json labels_json(const StrategicForm& form, const std::vector<std::size_t>& profile) {
  return labels_json(form, form.index(profile));
}

Json linearity_json(const CongestionGame& game) {
  Json out = Json::array();
  for (std::size_t r = 0; r < game.resource_count(); ++r) {
    const LinearityEntry e = is_linear(game.cost(r));
    Json entry;
    entry["resource"] = game.resource_name(r);
    entry["linear"] = e.linear;
    entry["slope"] = e.slope ? rational_to_json(*e.slope) : Json(nullptr);
    entry["intercept"] = e.intercept ? rational_to_json(*e.intercept) : Json(nullptr);
    entry["first_violation"] = e.first_violation ? Json(*e.first_violation) : Json(nullptr);
    out.push_back(std::move(entry));
  }
  return out;
}

Json witness_json(const StrategicForm& form, const FourCycleWitness& w) {
  Json out;
  out["players"] = {w.player_i + 1, w.player_j + 1};
  out["base"] = labels_json(form, w.base);
  out["t_i"] = form.labels(w.player_i)[w.t_i];
  out["t_j"] = form.labels(w.player_j)[w.t_j];
  Json cycle = Json::array();
  for (const auto& profile : w.cycle()) cycle.push_back(labels_json(form, profile));
  out["cycle"] = std::move(cycle);
  out["residual"] = rational_to_json(w.residual);
  return out;
}

Json claims_json(const std::string& name, const std::vector<ClaimResult>& results) {
  Json claims = Json::array();
  for (const auto& r : results) {
    Json c;
    c["citation"] = r.citation;
    c["description"] = r.description;
    c["status"] = std::string(to_string(r.status));
    c["detail"] = r.detail;
    claims.push_back(std::move(c));
  }
  Json out;
  out["name"] = name;
  out["claims"] = std::move(claims);
  return out;
}

std::string profile_text(const Json& profile) {
  std::string out;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    if (k > 0) out += " | ";
    for (std::size_t i = 0; i < profile[k].size(); ++i) {
      if (i > 0) out += ',';
      out += profile[k][i].get<std::string>();
    }
  }
  return "(" + out + ")";
}

std::string value_text(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string labels_text(const Json& labels) {
  std::string out;
  for (std::size_t p = 0; p < labels.size(); ++p) {
    if (p > 0) out += " | ";
    out += labels[p].get<std::string>();
  }
  return "(" + out + ")";
}

std::size_t pick(std::uint64_t seed, std::uint64_t stream, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(mix_seed(seed, stream) % (hi - lo + 1));
}

void render_solve(std::ostream& os, const Json& r) {
  if (r["method"] == "brute") {
    const auto& eq = r["equilibria"];
    if (eq.empty()) {
      os << "no pure Nash equilibrium\n";
      return;
    }
    os << eq.size() << " pure Nash equilibri" << (eq.size() == 1 ? "um" : "a") << ":\n";
    for (std::size_t e = 0; e < eq.size(); ++e) {
      os << "  " << profile_text(eq[e]) << "  congestion";
      for (const auto& [name, count] : r["congestion"][e].items()) os << ' ' << name << ':' << count.dump();
      os << '\n';
    }
    return;
  }
  os << "case: " << r["case"].get<std::string>();
  if (!r["hub"].is_null()) os << " (hub " << r["hub"].get<std::string>() << ")";
  os << "\nunderlying equilibrium: " << profile_text(r["underlying"]) << '\n';
  os << "arrangement: " << profile_text(r["arrangement"]) << '\n';
  for (std::size_t m = 0; m < r["moves"].size(); ++m) {
    const auto& mv = r["moves"][m];
    os << "move " << m + 1 << ": block " << mv["block"].dump() << " sub-agent " << mv["sub_agent"].dump()
       << ' ' << mv["from"].get<std::string>() << " -> " << mv["to"].get<std::string>()
       << " (cost delta " << value_text(mv["cost_delta"]) << ")\n";
  }
  os << "equilibrium: " << profile_text(r["result"]) << (r["verified"].get<bool>() ? " (verified)" : "") << '\n';
}

void render_potential(std::ostream& os, const Json& r) {
  os << "exact potential: " << (r["has_potential"].get<bool>() ? "yes" : "no") << '\n';
  if (r.contains("table")) {
    for (const auto& row : r["table"]) {
      os << "  P" << labels_text(row["profile"]) << " = " << value_text(row["value"]) << '\n';
    }
  }
  if (r.contains("witness")) {
    const auto& w = r["witness"];
    os << "four-cycle of players " << w["players"][0].dump() << " and " << w["players"][1].dump() << ":";
    for (const auto& p : w["cycle"]) os << ' ' << labels_text(p);
    os << "\nresidual: " << value_text(w["residual"]) << '\n';
  }
  os << "cost linearity:\n";
  for (const auto& e : r["linearity"]) {
    os << "  " << e["resource"].get<std::string>() << ": ";
    if (e["linear"].get<bool>()) {
      os << "linear, slope " << value_text(e["slope"]) << ", intercept " << value_text(e["intercept"]) << '\n';
    } else {
      os << "not linear (second difference nonzero at j=" << e["first_violation"].dump() << ")\n";
    }
  }
  if (r.contains("theorem2")) {
    const auto& t = r["theorem2"];
    os << "singleton+pair partition: " << (t["applicable"].get<bool>() ? "yes" : "no");
    if (t["applicable"].get<bool>()) {
      os << "; linear <=> potential " << (t["consistent"].get<bool>() ? "holds" : "VIOLATED");
    }
    os << '\n';
  }
}

void render_matrix(std::ostream& os, const Json& r) {
  const auto& rows = r["rows"];
  const auto& cols = r["columns"];
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"G^C"});
  for (const auto& c : cols) grid[0].push_back(c.get<std::string>());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::string> line{rows[i].get<std::string>()};
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto& cell = r["cells"][i][j];
      line.push_back(value_text(cell[0]) + ", " + value_text(cell[1]));
    }
    grid.push_back(std::move(line));
  }
  std::vector<std::size_t> width(grid[0].size(), 0);
  for (const auto& line : grid) {
    for (std::size_t j = 0; j < line.size(); ++j) width[j] = std::max(width[j], line[j].size());
  }
  for (const auto& line : grid) {
    os << '|';
    for (std::size_t j = 0; j < line.size(); ++j) os << ' ' << std::left << std::setw(static_cast<int>(width[j])) << line[j] << " |";
    os << '\n';
  }
  for (const auto& a : r["annotations"]) {
    os << "note: cell " << labels_text(a["cell"]) << " printed " << value_text(a["printed"][0]) << ", "
       << value_text(a["printed"][1]) << " but recomputes to " << value_text(a["recomputed"][0]) << ", "
       << value_text(a["recomputed"][1]) << " (" << a["status"].get<std::string>() << ")\n";
  }
}

void render_examples(std::ostream& os, const Json& r) {
  for (const auto& f : r["fixtures"]) {
    os << f["name"].get<std::string>() << ":\n";
    for (const auto& c : f["claims"]) {
      os << "  [" << c["status"].get<std::string>() << "] " << c["description"].get<std::string>();
      if (!c["detail"].get<std::string>().empty()) os << "  -- " << c["detail"].get<std::string>();
      os << "  {" << c["citation"].get<std::string>() << "}\n";
    }
  }
  const auto& s = r["summary"];
  os << "claims: " << s["pass"].dump() << " pass, " << s["discrepancy"].dump() << " discrepancy, "
     << s["fail"].dump() << " fail\n";
}

void render_experiment(std::ostream& os, const Json& r) {
  const std::string kind = r["kind"].get<std::string>();
  os << "experiment " << kind << ", " << r["trials"].dump() << " trials, seed " << r["seed"].dump() << '\n';
  if (kind == "theorem1") {
    os << "  constructive solver verified: " << r["verified"].dump() << "/" << r["trials"].dump() << '\n'
       << "  brute force found an equilibrium: " << r["brute_nonempty"].dump() << "/" << r["trials"].dump() << '\n'
       << "  case 1: " << r["case1"].dump() << ", case 2: " << r["case2"].dump()
       << ", improvement moves: " << r["moves"].dump() << '\n';
  } else if (kind == "theorem2") {
    const auto& c = r["confusion"];
    os << "                 potential  no potential\n"
       << "  linear         " << std::setw(9) << c["linear_potential"].dump() << "  " << std::setw(12)
       << c["linear_no_potential"].dump() << '\n'
       << "  not linear     " << std::setw(9) << c["nonlinear_potential"].dump() << "  " << std::setw(12)
       << c["nonlinear_no_potential"].dump() << '\n'
       << "  witnesses re-evaluated: " << r["witnesses_checked"].dump() << '\n';
  } else {
    os << "  instances without pure Nash equilibrium: " << r["empty_ne"].dump() << "/" << r["instances"].dump()
       << '\n';
    for (const auto& ce : r["counterexamples"]) os << "  counterexample: " << ce["label"].get<std::string>() << '\n';
  }
  os << "  expectation " << (r["expectation_met"].get<bool>() ? "met" : "NOT met") << '\n';
}

}  // namespace

Json report_to_json(const Report& report) {
  Json out;
  out["command"] = report.command;
  out["input_digest"] = report.input_digest;
  out["result"] = report.result;
  if (report.elapsed_ms) out["elapsed_ms"] = *report.elapsed_ms;
  return out;
}

Report report_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("command") || !doc.contains("input_digest") || !doc.contains("result") ||
      !doc["command"].is_string() || !doc["input_digest"].is_string()) {
    throw Error(ErrorCode::ParseError, "not a report");
  }
  Report r{doc["command"].get<std::string>(), doc["input_digest"].get<std::string>(), doc["result"], std::nullopt};
  if (doc.contains("elapsed_ms")) r.elapsed_ms = doc["elapsed_ms"].get<double>();
  return r;
}

std::string render_text(const Report& report) {
  std::ostringstream os;
  const Json& r = report.result;
  if (report.command == "solve") {
    render_solve(os, r);
  } else if (report.command == "potential") {
    render_potential(os, r);
  } else if (report.command == "matrix") {
    render_matrix(os, r);
  } else if (report.command == "examples") {
    render_examples(os, r);
  } else if (report.command == "experiment") {
    render_experiment(os, r);
  } else {
    os << r.dump(2) << '\n';
  }
  if (report.elapsed_ms) os << "elapsed: " << *report.elapsed_ms << " ms\n";
  return os.str();
}

Limits limits_from_environment() {
  Limits limits;
  if (const char* raw = std::getenv("CCG_SIZE_LIMIT")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(raw, &used);
      if (used != std::string_view(raw).size() || v == 0) throw std::invalid_argument(raw);
      limits.max_cells = v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidParams, std::string("CCG_SIZE_LIMIT must be a positive integer, got '") + raw + "'");
    }
  }
  return limits;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::NegativeCost:
    case ErrorCode::DecreasingCost:
    case ErrorCode::EmptyStrategySet:
    case ErrorCode::UnknownResource:
    case ErrorCode::LengthMismatch:
    case ErrorCode::InvalidPartition:
    case ErrorCode::InvalidParams:
    case ErrorCode::InvalidCosts:
      return kExitInputError;
    case ErrorCode::PreconditionViolated:
    case ErrorCode::SizeLimitExceeded:
    case ErrorCode::NotTwoBlocks:
    case ErrorCode::BlockLargerThanResourceSet:
      return kExitPrecondition;
    case ErrorCode::FixtureFailure:
      return kExitFixtureFailure;
    default:
      return kExitInternal;
  }
}

CommandOutcome cmd_solve(const GameFile& file, std::string_view method, const Context& ctx) {
  require_valid(file.game);
  const CoalitionalGame cg(file.game, file.partition);
  CommandOutcome out{Report{"solve", game_digest(file), Json::object(), std::nullopt}, kExitOk};
  Json& r = out.report.result;
  if (method == "brute") {
    const NeReport ne = enumerate_pure_ne(cg, EnumerationOptions{ctx.limits, false, ctx.threads});
    r["method"] = "brute";
    r["exhaustive"] = ne.exhaustive;
    r["equilibria"] = Json::array();
    r["congestion"] = Json::array();
    for (const auto& p : ne.equilibria) {
      r["equilibria"].push_back(profile_json(cg, p));
      r["congestion"].push_back(congestion_json(file.game, congestion(file.game, p)));
    }
    out.exit_code = ne.equilibria.empty() ? kExitNone : kExitOk;
  } else if (method == "theorem1") {
    const PairSolveTrace trace = solve_pair_ccg(file.game, file.partition);
    r["method"] = "theorem1";
    r["case"] = trace.case_taken == PairCase::Case1 ? "case1" : "case2";
    r["hub"] = trace.hub_resource ? Json(file.game.resource_name(*trace.hub_resource)) : Json(nullptr);
    r["underlying"] = profile_json(cg, trace.underlying_profile);
    r["arrangement"] = profile_json(cg, trace.arrangement);
    r["moves"] = Json::array();
    for (const auto& m : trace.moves) {
      Json mv;
      mv["block"] = m.block + 1;
      mv["sub_agent"] = m.sub_agent + 1;
      mv["from"] = file.game.resource_name(m.from);
      mv["to"] = file.game.resource_name(m.to);
      mv["cost_delta"] = rational_to_json(m.cost_delta);
      r["moves"].push_back(std::move(mv));
    }
    r["result"] = profile_json(cg, trace.result);
    r["verified"] = is_ccg_ne(cg, trace.result, ctx.limits).is_ne;
  } else {
    throw Error(ErrorCode::InvalidParams, "unknown method '" + std::string(method) + "'");
  }
  return out;
}

CommandOutcome cmd_potential(const GameFile& file, const Context& ctx) {
  require_valid(file.game);
  const CoalitionalGame cg(file.game, file.partition);
  const MaterializedGame game = materialize(cg, ctx.limits);
  const PotentialVerdict verdict = exact_potential(game.form, ctx.limits, ctx.threads);

  CommandOutcome out{Report{"potential", game_digest(file), Json::object(), std::nullopt}, kExitOk};
  Json& r = out.report.result;
  r["blocks"] = cg.block_count();
  r["profiles"] = game.form.profile_count();
  r["has_potential"] = verdict.has_potential();
  if (verdict.has_potential()) {
    Json table = Json::array();
    for (std::uint64_t s = 0; s < game.form.profile_count(); ++s) {
      Json row;
      row["profile"] = labels_json(game.form, s);
      row["value"] = rational_to_json(verdict.table().values[s]);
      table.push_back(std::move(row));
    }
    r["table"] = std::move(table);
  } else {
    r["witness"] = witness_json(game.form, verdict.witness());
  }
  r["linearity"] = linearity_json(file.game);
  if (file.game.is_simple()) {
    const Theorem2Verdict t2 = theorem2_check(file.game, file.partition, ctx.limits);
    Json t;
    t["applicable"] = t2.applicable;
    t["all_linear"] = t2.all_linear;
    t["has_potential"] = t2.has_potential;
    t["consistent"] = t2.consistent;
    r["theorem2"] = std::move(t);
  }
  out.exit_code = verdict.has_potential() ? kExitOk : kExitNone;
  return out;
}

std::optional<Fixture> known_fixture(const GameFile& file) {
  for (auto make : {&example2, &example3}) {
    Fixture f = make();
    if (f.game == file.game && f.partition == file.partition) return f;
  }
  const auto& g = file.game;
  if (g.is_simple() && g.players() == 3 && g.resources() == std::vector<std::string>{"A", "B"} &&
      file.partition == Partition({{0, 1}, {2}}, 3) && validate_game(g).empty()) {
    const auto& a = g.cost(0).values;
    const auto& b = g.cost(1).values;
    return example4(a[0], a[1], a[2], b[0], b[1], b[2]);
  }
  return std::nullopt;
}

CommandOutcome cmd_matrix(const GameFile& file, const Context& ctx) {
  require_valid(file.game);
  const CoalitionalGame cg(file.game, file.partition);
  if (cg.block_count() != 2) {
    throw Error(ErrorCode::NotTwoBlocks, "matrix rendering needs exactly 2 blocks, got " +
                                             std::to_string(cg.block_count()));
  }
  for (std::size_t k = 0; k < 2; ++k) {
    if (canonical_block_strategy_count(cg, k) > kMatrixRenderBound) {
      throw Error(ErrorCode::SizeLimitExceeded, "block " + std::to_string(k + 1) + " has more than " +
                                                    std::to_string(kMatrixRenderBound) + " strategies");
    }
  }
  const MaterializedGame game = materialize(cg, ctx.limits);
  const StrategicForm& form = game.form;

  CommandOutcome out{Report{"matrix", game_digest(file), Json::object(), std::nullopt}, kExitOk};
  Json& r = out.report.result;
  r["rows"] = form.labels(0);
  r["columns"] = form.labels(1);
  Json cells = Json::array();
  for (std::size_t i = 0; i < form.strategy_count(0); ++i) {
    Json line = Json::array();
    for (std::size_t j = 0; j < form.strategy_count(1); ++j) {
      const auto idx = form.index(std::vector<std::size_t>{i, j});
      line.push_back(Json::array({rational_to_json(form.utility(idx, 0)), rational_to_json(form.utility(idx, 1))}));
    }
    cells.push_back(std::move(line));
  }
  r["cells"] = std::move(cells);
  r["annotations"] = Json::array();
  if (auto fixture = known_fixture(file)) {
    r["fixture"] = fixture->name;
    const auto results = check_fixture(*fixture, ctx.limits);
    for (std::size_t c = 0; c < fixture->claims.size(); ++c) {
      const auto* cell = std::get_if<MatrixCellClaim>(&fixture->claims[c].body);
      if (!cell || results[c].status == ClaimStatus::Pass) continue;
      std::vector<std::size_t> profile;
      for (std::size_t p = 0; p < 2; ++p) {
        const auto& labels = form.labels(p);
        profile.push_back(static_cast<std::size_t>(std::find(labels.begin(), labels.end(), cell->labels[p]) - labels.begin()));
      }
      const auto idx = form.index(profile);
      Json a;
      a["cell"] = cell->labels;
      a["printed"] = Json::array({rational_to_json(cell->printed[0]), rational_to_json(cell->printed[1])});
      a["recomputed"] = Json::array({rational_to_json(form.utility(idx, 0)), rational_to_json(form.utility(idx, 1))});
      a["status"] = std::string(to_string(results[c].status));
      r["annotations"].push_back(std::move(a));
    }
  }
  return out;
}

CommandOutcome cmd_examples(std::string_view which, const Context& ctx) {
  std::vector<Fixture> fixtures;
  if (which == "2" || which == "all") fixtures.push_back(example2());
  if (which == "3" || which == "all") fixtures.push_back(example3());
  if (which == "4" || which == "all") {
    fixtures.push_back(example4(1, 2, 3, 2, 4, 6));
    fixtures.back().name = "example4 a=(1,2,3) b=(2,4,6)";
    fixtures.push_back(example4(0, 12, 16, 0, 12, 16));
    fixtures.back().name = "example4 a=(0,12,16) b=(0,12,16)";
  }
  if (fixtures.empty()) throw Error(ErrorCode::InvalidParams, "--which must be 2, 3, 4 or all");

  CommandOutcome out{Report{"examples", digest("examples:" + std::string(which)), Json::object(), std::nullopt},
                     kExitOk};
  Json list = Json::array();
  std::size_t pass = 0, fail = 0, discrepancy = 0;
  for (const auto& f : fixtures) {
    auto results = check_fixture(f, ctx.limits);
    if (f.name.starts_with("example4")) {
      const Theorem2Verdict t2 = theorem2_check(f.game, f.partition, ctx.limits);
      results.push_back(ClaimResult{"Theorem 2", "linear costs <=> exact potential",
                                    t2.consistent ? ClaimStatus::Pass : ClaimStatus::Fail,
                                    std::string(t2.all_linear ? "linear" : "not linear") + ", " +
                                        (t2.has_potential ? "potential" : "no potential")});
    }
    for (const auto& res : results) {
      if (res.status == ClaimStatus::Pass) ++pass;
      else if (res.status == ClaimStatus::Fail) ++fail;
      else ++discrepancy;
    }
    list.push_back(claims_json(f.name, results));
  }
  out.report.result["fixtures"] = std::move(list);
  out.report.result["summary"] = {{"pass", pass}, {"discrepancy", discrepancy}, {"fail", fail}};
  out.exit_code = fail == 0 ? kExitOk : kExitFixtureFailure;
  return out;
}

GameFile cmd_generate(const GenerateParams& p) {
  return GameFile{random_game(p.seed, p.players, p.resources, p.cost_class),
                  random_partition(mix_seed(p.seed, 0xb10c), p.players, p.max_block, p.theorem2_shape)};
}

CommandOutcome cmd_experiment(const ExperimentParams& p, const Context& ctx) {
  if (p.trials == 0 || p.max_players == 0 || p.max_resources == 0 || p.max_resources > 26) {
    throw Error(ErrorCode::InvalidParams, "trials, max players and max resources must be positive");
  }
  CommandOutcome out{Report{"experiment",
                            digest("experiment:" + p.kind + ":" + std::to_string(p.trials) + ":" +
                                   std::to_string(p.seed) + ":" + std::to_string(p.max_players) + ":" +
                                   std::to_string(p.max_resources)),
                            Json::object(), std::nullopt},
                     kExitOk};
  Json& r = out.report.result;
  r["kind"] = p.kind;
  r["trials"] = p.trials;
  r["seed"] = p.seed;
  r["max_players"] = p.max_players;
  r["max_resources"] = p.max_resources;

  if (p.kind == "theorem1") {
    std::size_t verified = 0, nonempty = 0, case1 = 0, case2 = 0, moves = 0;
    Json failures = Json::array();
    for (std::size_t t = 0; t < p.trials; ++t) {
      const std::uint64_t s = mix_seed(p.seed, t);
      const std::size_t n = pick(s, 1, 1, p.max_players);
      const std::size_t rc = pick(s, 2, 1, p.max_resources);
      const CongestionGame game = random_game(mix_seed(s, 3), n, rc, CostClass::Monotone);
      const Partition partition = random_partition(mix_seed(s, 4), n, std::min<std::size_t>(2, n));
      const CoalitionalGame cg(game, partition);
      bool ok = false;
      try {
        const PairSolveTrace trace = solve_pair_ccg(game, partition, PairSolveOptions{false});
        (trace.case_taken == PairCase::Case1 ? case1 : case2)++;
        moves += trace.moves.size();
        ok = is_ccg_ne(cg, trace.result, ctx.limits).is_ne;
      } catch (const Error&) {
        ok = false;
      }
      verified += ok;
      const bool has_ne = !enumerate_pure_ne(cg, EnumerationOptions{ctx.limits, false, ctx.threads}).equilibria.empty();
      nonempty += has_ne;
      if ((!ok || !has_ne) && failures.size() < kMaxReportedCounterexamples) {
        failures.push_back({{"trial", t}, {"game", game_file_json(game, partition)}});
      }
    }
    r["verified"] = verified;
    r["brute_nonempty"] = nonempty;
    r["case1"] = case1;
    r["case2"] = case2;
    r["moves"] = moves;
    r["failures"] = std::move(failures);
    r["expectation_met"] = verified == p.trials && nonempty == p.trials;
  } else if (p.kind == "theorem2") {
    if (p.max_players < 3 || p.max_resources < 2) {
      throw Error(ErrorCode::InvalidParams, "theorem2 needs at least 3 players and 2 resources");
    }
    std::size_t lp = 0, lnp = 0, np = 0, nnp = 0, witnesses = 0;
    Json inconsistencies = Json::array();
    for (std::size_t t = 0; t < p.trials; ++t) {
      const std::uint64_t s = mix_seed(p.seed, t);
      const std::size_t n = pick(s, 1, 3, p.max_players);
      const std::size_t rc = pick(s, 2, 2, p.max_resources);
      const CostClass cls = t % 2 == 0 ? CostClass::Linear : CostClass::Monotone;
      const CongestionGame game = random_game(mix_seed(s, 3), n, rc, cls);
      const std::size_t max_block = std::min<std::size_t>(n, pick(s, 5, 2, 3));
      const Partition partition = random_partition(mix_seed(s, 4), n, max_block, true);
      const CoalitionalGame cg(game, partition);
      const MaterializedGame m = materialize(cg, ctx.limits);
      const PotentialVerdict v = exact_potential(m.form, ctx.limits, ctx.threads);
      bool all_linear = true;
      for (const auto& c : game.costs()) all_linear = all_linear && is_linear(c).linear;
      if (!v.has_potential()) {
        const auto& w = v.witness();
        if (w.residual != 0 && four_cycle_residual(m.form, w.player_i, w.player_j, w.base, w.t_i, w.t_j) == w.residual) {
          ++witnesses;
        }
      }
      if (all_linear) (v.has_potential() ? lp : lnp)++;
      else (v.has_potential() ? np : nnp)++;
      if (all_linear != v.has_potential() && inconsistencies.size() < kMaxReportedCounterexamples) {
        inconsistencies.push_back({{"trial", t}, {"game", game_file_json(game, partition)}});
      }
    }
    r["confusion"] = {{"linear_potential", lp}, {"linear_no_potential", lnp},
                      {"nonlinear_potential", np}, {"nonlinear_no_potential", nnp}};
    r["witnesses_checked"] = witnesses;
    r["inconsistencies"] = std::move(inconsistencies);
    r["expectation_met"] = lnp == 0 && np == 0 && witnesses == nnp;
  } else if (p.kind == "pairs-vs-triples") {
    if (p.max_players < 3 || p.max_resources < 2) {
      throw Error(ErrorCode::InvalidParams, "pairs-vs-triples needs at least 3 players and 2 resources");
    }
    std::size_t empty = 0;
    Json counterexamples = Json::array();
    auto record = [&](const std::string& label, const CongestionGame& game, const Partition& partition) {
      const CoalitionalGame cg(game, partition);
      if (!enumerate_pure_ne(cg, EnumerationOptions{ctx.limits, false, ctx.threads}).equilibria.empty()) return;
      ++empty;
      if (counterexamples.size() < kMaxReportedCounterexamples) {
        counterexamples.push_back({{"label", label}, {"game", game_file_json(game, partition)}});
      }
    };
    const Fixture injected = example2();
    record("example2 (injected)", injected.game, injected.partition);
    for (std::size_t t = 0; t < p.trials; ++t) {
      const std::uint64_t s = mix_seed(p.seed, t);
      const std::size_t n = pick(s, 1, 3, p.max_players);
      const std::size_t rc = pick(s, 2, 2, p.max_resources);
      const CongestionGame game = random_game(mix_seed(s, 3), n, rc, CostClass::Monotone);
      // Redraw until some block has three members.
      std::uint64_t stream = 4;
      Partition partition = random_partition(mix_seed(s, stream), n, 3);
      while (partition.max_block_size() < 3) partition = random_partition(mix_seed(s, ++stream), n, 3);
      record("trial " + std::to_string(t), game, partition);
    }
    r["instances"] = p.trials + 1;
    r["empty_ne"] = empty;
    r["counterexamples"] = std::move(counterexamples);
    r["expectation_met"] = empty > 0;
  } else {
    throw Error(ErrorCode::InvalidParams, "unknown experiment '" + p.kind + "'");
  }
  out.exit_code = r["expectation_met"].get<bool>() ? kExitOk : kExitFixtureFailure;
  return out;
}

}  // namespace ccg::cli
