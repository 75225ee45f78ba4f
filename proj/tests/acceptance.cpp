// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Expected values come from the independent oracles in oracles.hpp or from
// hand formulas written out here, never from the code under test.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "ccg/cli.hpp"
#include "ccg/equilibria.hpp"
#include "ccg/pair_ne.hpp"
#include "ccg/potential.hpp"
#include "oracles.hpp"

using namespace ccg;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

// Collects the first few failure messages for one criterion.
struct Recorder {
  Outcome out;
  int failures = 0;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    out.ok = false;
    if (failures++ < 3) details += "; " + what;
  }
  Outcome finish(const std::string& summary) {
    out.note = summary + details;
    return out;
  }
  std::string details;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, ',');) out.push_back(part);
  return out;
}

std::vector<std::size_t> raw_choice(const Fixture& f, const std::vector<std::string>& block_labels) {
  const CoalitionalGame cg(f.game, f.partition);
  std::vector<std::size_t> choice(f.game.players(), 0);
  for (std::size_t k = 0; k < cg.block_count(); ++k) {
    const auto names = split(block_labels[k]);
    const auto& members = cg.partition().block(k);
    for (std::size_t m = 0; m < members.size(); ++m) {
      for (std::size_t s = 0; s < f.game.strategies(members[m]).size(); ++s) {
        if (f.game.strategy_label(members[m], s) == names[m]) choice[members[m]] = s;
      }
    }
  }
  return choice;
}

std::uint64_t cell_index(const StrategicForm& form, const std::vector<std::string>& labels) {
  std::vector<std::size_t> idx;
  for (std::size_t p = 0; p < labels.size(); ++p) {
    const auto& names = form.labels(p);
    idx.push_back(static_cast<std::size_t>(std::find(names.begin(), names.end(), labels[p]) - names.begin()));
  }
  return form.index(idx);
}

Rational rosenthal(const CongestionGame& g, const std::vector<std::size_t>& choice) {
  Rational total = 0;
  for (ResourceId r = 0; r < g.resource_count(); ++r) {
    int users = 0;
    for (std::size_t i = 0; i < g.players(); ++i) users += g.strategy(i, choice[i])[0] == r;
    for (int j = 1; j <= users; ++j) total += g.cost(r).values[static_cast<std::size_t>(j - 1)];
  }
  return total;
}

bool costs_linear(const CongestionGame& g) {
  for (const auto& t : g.costs()) {
    for (std::size_t j = 2; j < t.values.size(); ++j) {
      if (t.values[j] - 2 * t.values[j - 1] + t.values[j - 2] != 0) return false;
    }
  }
  return true;
}

Rational square_sum(const StrategicForm& f, const FourCycleWitness& w) {
  auto b = w.base;
  b[w.player_i] = w.t_i;
  auto c = b;
  c[w.player_j] = w.t_j;
  auto d = w.base;
  d[w.player_j] = w.t_j;
  const auto A = f.index(w.base), B = f.index(b), C = f.index(c), D = f.index(d);
  const auto i = w.player_i, j = w.player_j;
  return (f.utility(A, i) - f.utility(B, i)) + (f.utility(B, j) - f.utility(C, j)) +
         (f.utility(C, i) - f.utility(D, i)) + (f.utility(D, j) - f.utility(A, j));
}

std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

CostClass any_class(std::mt19937_64& rng) { return static_cast<CostClass>(draw(rng, 0, 2)); }

// Worked example with four sub-agents on two resources.
Outcome ac1() {
  Recorder rec;
  const auto f = example2();
  const CoalitionalGame cg(f.game, f.partition);
  const auto form = materialize(cg).form;
  rec.expect(form.strategy_count(0) == 4 && form.strategy_count(1) == 2, "matrix is not 4x2");
  int cells = 0;
  for (const auto& claim : f.claims) {
    const auto* cell = std::get_if<MatrixCellClaim>(&claim.body);
    if (!cell) continue;
    ++cells;
    const auto idx = cell_index(form, cell->labels);
    const auto choice = raw_choice(f, cell->labels);
    for (std::size_t k = 0; k < 2; ++k) {
      rec.expect(form.utility(idx, k) == cell->printed[k], "cell differs from printed table");
      rec.expect(oracle::block_utility(cg, choice, k) == cell->printed[k], "oracle differs from printed table");
    }
  }
  rec.expect(cells == 8, "expected 8 printed cells");
  rec.expect(enumerate_pure_ne(cg).equilibria.empty(), "equilibrium found");
  rec.expect(oracle::pure_ne(cg).empty(), "oracle found an equilibrium");
  return rec.finish(std::to_string(cells) + "/8 cells, no pure equilibrium");
}

Outcome ac2() {
  Recorder rec;
  const auto f = example3();
  const CoalitionalGame cg(f.game, f.partition);
  const auto form = materialize(cg).form;
  rec.expect(form.strategy_count(0) == 6 && form.strategy_count(1) == 3, "matrix is not 6x3");
  int coalition_ok = 0, singleton_ok = 0;
  std::vector<std::string> inconsistent;
  for (const auto& claim : f.claims) {
    const auto* cell = std::get_if<MatrixCellClaim>(&claim.body);
    if (!cell) continue;
    const auto idx = cell_index(form, cell->labels);
    const auto choice = raw_choice(f, cell->labels);
    rec.expect(form.utility(idx, 0) == oracle::block_utility(cg, choice, 0), "coalition payoff mismatch");
    rec.expect(form.utility(idx, 1) == oracle::block_utility(cg, choice, 1), "singleton payoff mismatch");
    coalition_ok += form.utility(idx, 0) == cell->printed[0];
    if (form.utility(idx, 1) == cell->printed[1]) {
      ++singleton_ok;
    } else {
      // a positive printed utility cannot arise from non-negative costs
      rec.expect(cell->printed[1] > 0, "singleton payoff differs and is not sign-inconsistent");
      inconsistent.push_back(cell->labels[0] + " | " + cell->labels[1]);
    }
  }
  rec.expect(coalition_ok == 18, "coalition payoffs differ from the printed table");
  rec.expect(inconsistent == std::vector<std::string>{"AB,AB | AC", "AC,AC | AC"},
             "unexpected set of sign-inconsistent cells");

  int flagged = 0;
  for (const auto& r : check_fixture(f)) {
    rec.expect(r.status != ClaimStatus::Fail, "fixture claim failed: " + r.description);
    flagged += r.status == ClaimStatus::Discrepancy;
  }
  rec.expect(flagged == 2, "expected exactly 2 annotated discrepancies");
  const auto matrix = cli::cmd_matrix(GameFile{f.game, f.partition}, cli::Context{});
  rec.expect(matrix.report.result["annotations"].size() == 2, "matrix command does not annotate 2 cells");
  rec.expect(enumerate_pure_ne(cg).equilibria.empty(), "equilibrium found");
  rec.expect(oracle::pure_ne(cg).empty(), "oracle found an equilibrium");
  return rec.finish(std::to_string(coalition_ok) + "/18 coalition payoffs, " + std::to_string(singleton_ok) +
                    "/16 consistent singleton payoffs, " + std::to_string(flagged) +
                    " discrepancies, no pure equilibrium");
}

Outcome ac3() {
  Recorder rec;
  std::mt19937_64 rng(31);
  int solved = 0, nonempty = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = draw(rng, 1, 6);
    const std::size_t rc = draw(rng, 1, 4);
    const auto g = random_game(rng(), n, rc, CostClass::Monotone);
    const auto p = random_partition(rng(), n, std::min<std::size_t>(2, n));
    const CoalitionalGame cg(g, p);
    try {
      const auto trace = solve_pair_ccg(g, p, PairSolveOptions{false});
      const bool ok = oracle::is_ne(cg, trace.result.choices);
      solved += ok;
      rec.expect(ok, "trial " + std::to_string(t) + ": output is not an equilibrium");
    } catch (const Error& e) {
      rec.expect(false, "trial " + std::to_string(t) + ": " + e.what());
    }
    const bool has = !oracle::pure_ne(cg).empty();
    nonempty += has;
    rec.expect(has, "trial " + std::to_string(t) + ": brute force found no equilibrium");
  }
  return rec.finish(std::to_string(solved) + "/200 verified, " + std::to_string(nonempty) + "/200 nonempty");
}

Outcome ac4() {
  Recorder rec;
  std::mt19937_64 rng(47);
  int agree = 0, witnesses = 0, negatives = 0, linear = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = draw(rng, 3, 5);
    const std::size_t rc = draw(rng, 2, 4);
    const auto cls = t % 2 == 0 ? CostClass::Linear : CostClass::Monotone;
    const auto g = random_game(rng(), n, rc, cls);
    const auto p = random_partition(rng(), n, std::min<std::size_t>(n, draw(rng, 2, 3)), true);
    const auto form = materialize(CoalitionalGame(g, p)).form;
    const bool lin = costs_linear(g);
    linear += lin;
    const auto v = theorem2_check(g, p);
    rec.expect(v.applicable, "check not applicable");
    const bool truth = oracle::has_exact_potential(form);
    const bool ok = v.has_potential == lin && truth == lin && v.consistent;
    agree += ok;
    rec.expect(ok, "trial " + std::to_string(t) + ": linearity and potential disagree");
    if (!v.potential.has_potential()) {
      ++negatives;
      const auto& w = v.potential.witness();
      const bool good = w.residual != 0 && square_sum(form, w) == w.residual;
      witnesses += good;
      rec.expect(good, "trial " + std::to_string(t) + ": witness does not re-evaluate");
    }
  }
  return rec.finish(std::to_string(agree) + "/200 agree (" + std::to_string(linear) + " linear), " +
                 std::to_string(witnesses) + "/" + std::to_string(negatives) + " witnesses re-evaluated");
}

Outcome ac5() {
  Recorder rec;
  std::mt19937_64 rng(53);
  auto rational = [&] { return make_rational(static_cast<long>(draw(rng, 0, 60)), static_cast<long>(draw(rng, 1, 12))); };
  int matched = 0;
  for (int t = 0; t < 50; ++t) {
    std::array<Rational, 3> a{rational(), rational(), rational()};
    std::array<Rational, 3> b{rational(), rational(), rational()};
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto f = example4(a[0], a[1], a[2], b[0], b[1], b[2]);
    const auto form = materialize(CoalitionalGame(f.game, f.partition)).form;
    auto at = [&](std::size_t player, const std::string& label) {
      const auto& names = form.labels(player);
      return static_cast<std::size_t>(std::find(names.begin(), names.end(), label) - names.begin());
    };
    // square (AA | A) -> (AB | A) -> (AB | B) -> (AA | B)
    const std::vector<std::size_t> base{at(0, "A,A"), at(1, "A")};
    const Rational got = four_cycle_residual(form, 0, 1, base, at(0, "A,B"), at(1, "B"));
    const Rational expected = 2 * a[1] - a[0] - a[2];
    matched += got == expected;
    rec.expect(got == expected, "residual " + to_string(got) + " vs " + to_string(expected));
  }
  return rec.finish(std::to_string(matched) + "/50 residuals equal 2*a2 - a1 - a3");
}

Outcome ac6() {
  Recorder rec;
  std::mt19937_64 rng(61);
  std::size_t profiles = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t rc = draw(rng, 1, 4);
    const std::size_t n = draw(rng, 1, 5);
    const auto g = random_game(rng(), n, rc, any_class(rng));
    const auto p = random_partition(rng(), n, std::min(rc, n));
    const CoalitionalGame cg(g, p);
    const auto ne_vectors = oracle::underlying_ne_vectors(g);
    std::vector<std::size_t> all(n), choice(n, 0);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    oracle::for_each_assignment(g, all, choice, [&] {
      const PureProfile s{choice};
      if (!has_distinct_block_resources(cg, s)) return;
      if (!ne_vectors.count(congestion(g, s).counts)) return;
      ++profiles;
      try {
        const auto p1 = check_proposition1(cg, s);
        const auto l1 = check_lemma1(cg, s);
        rec.expect(p1.applicable && p1.holds && l1.applicable && l1.holds, "statement does not hold");
        rec.expect(oracle::is_ne(cg, choice), "oracle rejects the profile");
      } catch (const Error& e) {
        rec.expect(false, e.what());
      }
    });
  }
  return rec.finish(std::to_string(profiles) + " constructed profiles checked");
}

Outcome ac7() {
  Recorder rec;
  std::mt19937_64 rng(71);
  std::size_t moves = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = draw(rng, 1, 6);
    const std::size_t rc = draw(rng, 1, 4);
    const auto g = random_game(rng(), n, rc, any_class(rng));
    const auto run = best_response_dynamics(g);
    moves += run.moves;
    rec.expect(run.aggregate_trace.size() == run.moves + 1, "trace length");
    for (std::size_t k = 1; k < run.aggregate_trace.size(); ++k) {
      rec.expect(run.aggregate_trace[k] < run.aggregate_trace[k - 1], "aggregate did not decrease");
    }
    rec.expect(run.aggregate_trace.front() == rosenthal(g, std::vector<std::size_t>(n, 0)), "start aggregate");
    rec.expect(run.aggregate_trace.back() == rosenthal(g, run.profile.choices), "final aggregate");
    rec.expect(oracle::underlying_ne_vectors(g).count(congestion(g, run.profile).counts) == 1,
               "dynamics did not stop at an equilibrium");
    const auto form = materialize(CoalitionalGame(g, Partition::discrete(n))).form;
    const auto v = exact_potential(form);
    rec.expect(v.has_potential(), "discrete partition without potential");
  }
  return rec.finish("500/500 terminated, " + std::to_string(moves) + " moves, all with a potential table");
}

Outcome ac8() {
  Recorder rec;
  std::mt19937_64 rng(83);
  int tables = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = draw(rng, 1, 6);
    const std::size_t rc = draw(rng, 1, 4);
    const auto g = random_game(rng(), n, rc, CostClass::Linear);
    const auto p = random_partition(rng(), n, std::min<std::size_t>(3, n));
    const auto form = materialize(CoalitionalGame(g, p)).form;
    const auto v = exact_potential(form);
    const bool ok = v.has_potential() && oracle::has_exact_potential(form);
    tables += ok;
    rec.expect(ok, "trial " + std::to_string(t) + ": no potential table");
  }
  return rec.finish(std::to_string(tables) + "/100 tables");
}

Outcome ac9() {
  Recorder rec;
  const auto out = cli::cmd_experiment(cli::ExperimentParams{"pairs-vs-triples", 50, 9, 6, 4}, cli::Context{});
  const auto& ce = out.report.result["counterexamples"];
  rec.expect(!ce.empty() && ce[0]["label"] == "example2 (injected)", "injected instance not reported NE-free");
  const auto f = example2();
  rec.expect(oracle::pure_ne(CoalitionalGame(f.game, f.partition)).empty(), "oracle found an equilibrium");
  rec.expect(f.partition.max_block_size() == 3, "injected instance has no triple");
  return rec.finish("injected instance NE-free; " + out.report.result["empty_ne"].dump() + "/" +
                    out.report.result["instances"].dump() + " instances NE-free");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 two-resource example matrix and empty equilibrium set", ac1},
      {"AC2 three-resource example matrix, discrepancies, empty equilibrium set", ac2},
      {"AC3 pair partitions always have a constructive equilibrium", ac3},
      {"AC4 linear costs iff exact potential, with witnesses", ac4},
      {"AC5 first-cycle residual formula", ac5},
      {"AC6 distinct-resource profiles are equilibria", ac6},
      {"AC7 best-response dynamics and discrete-partition potential", ac7},
      {"AC8 linear costs give a potential for any partition", ac8},
      {"AC9 a triple coalition can break existence", ac9},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s (%.2fs)\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.note.c_str(), secs);
    failed += !o.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
