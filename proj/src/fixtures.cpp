#include "ccg/fixtures.hpp"

#include <algorithm>
#include <sstream>

#include "ccg/equilibria.hpp"
#include "ccg/potential.hpp"
#include "ccg/strategic_form.hpp"

namespace ccg {

namespace {

Rational r(long v) { return Rational(v); }

CostTable table(std::initializer_list<Rational> values) { return CostTable{values}; }

Claim cell(std::string citation, std::vector<std::string> labels, std::vector<Rational> printed) {
  return Claim{std::move(citation), MatrixCellClaim{std::move(labels), std::move(printed)}};
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string join(const std::vector<Rational>& values) {
  std::vector<std::string> parts;
  for (const auto& v : values) parts.push_back(to_string(v));
  return "(" + join(parts, ", ") + ")";
}

std::size_t label_index(const StrategicForm& form, std::size_t player, const std::string& label) {
  const auto& labels = form.labels(player);
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw Error(ErrorCode::FixtureFailure, "no strategy labelled '" + label + "' for player " +
                                               std::to_string(player + 1));
  }
  return static_cast<std::size_t>(it - labels.begin());
}

ClaimResult check_cell(const MatrixCellClaim& claim, const MaterializedGame& game) {
  ClaimResult out;
  out.description = "cell (" + join(claim.labels, " | ") + ") = " + join(claim.printed);
  std::vector<std::size_t> profile;
  for (std::size_t p = 0; p < claim.labels.size(); ++p) {
    profile.push_back(label_index(game.form, p, claim.labels[p]));
  }
  const std::uint64_t idx = game.form.index(profile);
  std::vector<Rational> recomputed;
  bool mismatch = false;
  bool impossible_only = true;
  for (std::size_t p = 0; p < claim.printed.size(); ++p) {
    recomputed.push_back(game.form.utility(idx, p));
    if (recomputed.back() != claim.printed[p]) {
      mismatch = true;
      impossible_only = impossible_only && claim.printed[p] > 0;
    }
  }
  if (!mismatch) {
    out.status = ClaimStatus::Pass;
  } else {
    out.status = impossible_only ? ClaimStatus::Discrepancy : ClaimStatus::Fail;
    out.detail = "recomputed " + join(recomputed);
    if (impossible_only) out.detail += "; printed value is a positive utility under non-negative costs";
  }
  return out;
}

}  // namespace

std::string_view to_string(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::Pass: return "pass";
    case ClaimStatus::Fail: return "FAIL";
    case ClaimStatus::Discrepancy: return "discrepancy";
  }
  return "unknown";
}

Fixture example2() {
  const auto costs = table({r(0), r(12), r(16), r(18)});
  Fixture f{"example2", CongestionGame::simple({"A", "B"}, {costs, costs}, 4),
            Partition({{0, 1, 2}, {3}}, 4), {}};
  const std::string cite = "example2 matrix";
  f.claims = {
      cell(cite, {"A,A,A", "A"}, {r(-54), r(-18)}), cell(cite, {"A,A,A", "B"}, {r(-48), r(0)}),
      cell(cite, {"A,A,B", "A"}, {r(-32), r(-16)}), cell(cite, {"A,A,B", "B"}, {r(-36), r(-12)}),
      cell(cite, {"A,B,B", "A"}, {r(-36), r(-12)}), cell(cite, {"A,B,B", "B"}, {r(-32), r(-16)}),
      cell(cite, {"B,B,B", "A"}, {r(-48), r(0)}),   cell(cite, {"B,B,B", "B"}, {r(-54), r(-18)}),
      Claim{"example2 equilibrium set", NeSetClaim{true}},
  };
  return f;
}

Fixture example3() {
  // P(j) = 6 - 6/j for j = 1, 2, 3
  const auto costs = table({r(0), r(3), r(4)});
  const std::vector<ResourceSet> pairs{{0, 1}, {0, 2}, {1, 2}};
  Fixture f{"example3", CongestionGame({"A", "B", "C"}, {costs, costs, costs}, {pairs, pairs, pairs}),
            Partition({{0, 1}, {2}}, 3), {}};
  const std::string cite = "example3 matrix";
  struct Row {
    const char* row;
    long u[3][2];
  };
  // Printed verbatim, columns AB, AC, BC.
  const Row rows[] = {
      {"AB,AB", {{-16, -8}, {-14, 8}, {-14, -4}}},   {"AC,AC", {{-14, -4}, {-16, 4}, {-14, -4}}},
      {"BC,BC", {{-14, -4}, {-14, -4}, {-16, -8}}},  {"AB,AC", {{-11, -7}, {-11, -7}, {-12, -6}}},
      {"AB,BC", {{-11, -7}, {-12, -6}, {-11, -7}}},  {"AC,BC", {{-12, -6}, {-11, -7}, {-11, -7}}},
  };
  const char* cols[] = {"AB", "AC", "BC"};
  for (const auto& row : rows) {
    for (int c = 0; c < 3; ++c) f.claims.push_back(cell(cite, {row.row, cols[c]}, {r(row.u[c][0]), r(row.u[c][1])}));
  }
  f.claims.push_back(Claim{"example3 equilibrium set", NeSetClaim{true}});
  return f;
}

Fixture example4(const Rational& a1, const Rational& a2, const Rational& a3, const Rational& b1,
                 const Rational& b2, const Rational& b3) {
  for (const auto* t : {&a1, &b1}) {
    if (*t < 0) throw Error(ErrorCode::InvalidCosts, "costs must be non-negative");
  }
  if (a2 < a1 || a3 < a2 || b2 < b1 || b3 < b2) {
    throw Error(ErrorCode::InvalidCosts, "cost triples must be weakly increasing");
  }
  Fixture f{"example4", CongestionGame::simple({"A", "B"}, {table({a1, a2, a3}), table({b1, b2, b3})}, 3),
            Partition({{0, 1}, {2}}, 3), {}};
  const std::string cite = "example4 matrix";
  // The published table lists costs; utilities are their negation.
  f.claims = {
      cell(cite, {"A,A", "A"}, {-2 * a3, -a3}),        cell(cite, {"A,A", "B"}, {-2 * a2, -b1}),
      cell(cite, {"A,B", "A"}, {-(a2 + b1), -a2}),     cell(cite, {"A,B", "B"}, {-(a1 + b2), -b2}),
      cell(cite, {"B,B", "A"}, {-2 * b2, -a1}),        cell(cite, {"B,B", "B"}, {-2 * b3, -b3}),
  };
  const bool linear = 2 * a2 == a1 + a3 && 2 * b2 == b1 + b3;
  f.claims.push_back(Claim{"example4 potential condition",
                           PotentialClaim{linear, Rational(2 * a2 - a1 - a3)}});
  return f;
}

std::vector<ClaimResult> check_fixture(const Fixture& fixture, const Limits& limits) {
  const CoalitionalGame cg(fixture.game, fixture.partition);
  const MaterializedGame game = materialize(cg, limits);
  std::vector<ClaimResult> results;
  for (const auto& claim : fixture.claims) {
    ClaimResult result;
    if (const auto* c = std::get_if<MatrixCellClaim>(&claim.body)) {
      result = check_cell(*c, game);
    } else if (const auto* ne = std::get_if<NeSetClaim>(&claim.body)) {
      const NeReport report = enumerate_pure_ne(cg, EnumerationOptions{limits});
      const bool empty = report.equilibria.empty();
      result.description = ne->expect_empty ? "no pure Nash equilibrium" : "a pure Nash equilibrium exists";
      result.status = empty == ne->expect_empty ? ClaimStatus::Pass : ClaimStatus::Fail;
      result.detail = std::to_string(report.equilibria.size()) + " equilibria found";
    } else {
      const auto& pc = std::get<PotentialClaim>(claim.body);
      const PotentialVerdict verdict = exact_potential(game.form, limits);
      result.description = pc.expect_exists ? "exact potential exists" : "no exact potential";
      result.status = verdict.has_potential() == pc.expect_exists ? ClaimStatus::Pass : ClaimStatus::Fail;
      if (pc.first_cycle_residual) {
        const std::vector<std::size_t> base{label_index(game.form, 0, "A,A"), label_index(game.form, 1, "A")};
        const Rational residual = four_cycle_residual(game.form, 0, 1, base, label_index(game.form, 0, "A,B"),
                                                      label_index(game.form, 1, "B"));
        result.description += "; first cycle residual " + to_string(*pc.first_cycle_residual);
        result.detail = "recomputed residual " + to_string(residual);
        if (residual != *pc.first_cycle_residual) result.status = ClaimStatus::Fail;
      }
    }
    result.citation = claim.citation;
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace ccg
