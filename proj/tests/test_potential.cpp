#include <doctest.h>

#include "ccg/fixtures.hpp"
#include "ccg/potential.hpp"
#include "ccg/random.hpp"
#include "oracles.hpp"

using namespace ccg;

namespace {

CostTable table(std::initializer_list<long> v) {
  CostTable t;
  for (long x : v) t.values.emplace_back(x);
  return t;
}

StrategicForm example4_form(long a1, long a2, long a3, long b1, long b2, long b3) {
  const auto f = example4(a1, a2, a3, b1, b2, b3);
  return materialize(CoalitionalGame(f.game, f.partition)).form;
}

// Signed utility sum around the square, evaluated directly on the table.
Rational square_sum(const StrategicForm& f, const FourCycleWitness& w) {
  const auto c = w.cycle();
  const auto a = f.index(c[0]), b = f.index(c[1]), d = f.index(c[2]), e = f.index(c[3]);
  const auto i = w.player_i, j = w.player_j;
  return (f.utility(a, i) - f.utility(b, i)) + (f.utility(b, j) - f.utility(d, j)) +
         (f.utility(d, i) - f.utility(e, i)) + (f.utility(e, j) - f.utility(a, j));
}

CongestionGame shifted(const CongestionGame& g, const Rational& by) {
  std::vector<CostTable> costs = g.costs();
  for (auto& t : costs)
    for (auto& v : t.values) v += by;
  std::vector<std::vector<ResourceSet>> sets;
  for (std::size_t i = 0; i < g.players(); ++i) sets.push_back(g.strategies(i));
  return CongestionGame(g.resources(), costs, sets);
}

}  // namespace

TEST_CASE("path-built table verifies on a linear game") {
  const auto form = example4_form(1, 2, 3, 2, 4, 6);
  const auto t = build_potential_by_path(form);
  CHECK(t.values.size() == form.profile_count());
  CHECK(t.values[0] == 0);
  CHECK(verify_exact_potential(form, t).ok);
  CHECK(verify_exact_potential(form, t, 4).ok);

  auto broken = t;
  broken.values.back() += 1;
  const auto check = verify_exact_potential(form, broken);
  CHECK_FALSE(check.ok);
  REQUIRE(check.first_violation.has_value());
  CHECK(check.first_violation->potential_difference != check.first_violation->utility_difference);
}

TEST_CASE("four-cycle residual on the two-resource example") {
  // block 0 tuples: 0 = (A,A), 1 = (A,B), 2 = (B,B); block 1: 0 = A, 1 = B
  const std::vector<std::size_t> base{0, 0};
  CHECK(four_cycle_residual(example4_form(0, 12, 16, 0, 12, 16), 0, 1, base, 1, 1) == 8);
  CHECK(four_cycle_residual(example4_form(1, 2, 4, 1, 2, 4), 0, 1, base, 1, 1) == -1);
  CHECK(four_cycle_residual(example4_form(1, 2, 3, 5, 6, 7), 0, 1, base, 1, 1) == 0);

  const auto form = example4_form(0, 12, 16, 0, 12, 16);
  CHECK_THROWS_AS(four_cycle_residual(form, 0, 0, base, 1, 1), Error);
  CHECK_THROWS_AS(four_cycle_residual(form, 0, 2, base, 1, 1), Error);
  CHECK_THROWS_AS(four_cycle_residual(form, 0, 1, base, 3, 1), Error);
}

TEST_CASE("exact_potential returns a witness for nonlinear costs") {
  const auto form = example4_form(0, 12, 16, 0, 12, 16);
  const auto v = exact_potential(form);
  REQUIRE_FALSE(v.has_potential());
  const auto& w = v.witness();
  CHECK(w.residual != 0);
  CHECK(w.residual == four_cycle_residual(form, w.player_i, w.player_j, w.base, w.t_i, w.t_j));
  CHECK(w.residual == square_sum(form, w));
  CHECK(w.residual == 8);
}

TEST_CASE("is_linear") {
  auto e = is_linear(table({1, 2, 3}));
  CHECK(e.linear);
  CHECK(e.slope == Rational(1));
  CHECK(e.intercept == Rational(0));

  e = is_linear(table({5, 5, 5}));
  CHECK(e.linear);
  CHECK(e.slope == Rational(0));
  CHECK(e.intercept == Rational(5));

  e = is_linear(table({0, 12, 16}));
  CHECK_FALSE(e.linear);
  CHECK(e.first_violation == std::size_t{2});
  CHECK_FALSE(e.slope.has_value());

  CHECK(is_linear(table({4})).linear);
  CHECK(is_linear(table({1, 3})).linear);
  CHECK(is_linear(table({1, 3, 5, 8})).first_violation == std::size_t{3});
}

TEST_CASE("linear-cost criterion") {
  const auto lin = example4(1, 2, 3, 2, 4, 6);
  auto v = theorem2_check(lin.game, lin.partition);
  CHECK(v.applicable);
  CHECK(v.all_linear);
  CHECK(v.has_potential);
  CHECK(v.consistent);

  const auto non = example4(0, 12, 16, 0, 12, 16);
  v = theorem2_check(non.game, non.partition);
  CHECK(v.applicable);
  CHECK_FALSE(v.all_linear);
  CHECK_FALSE(v.has_potential);
  CHECK(v.linearity.size() == 2);

  const auto f2 = example2();
  CHECK_FALSE(theorem2_check(f2.game, f2.partition).applicable);

  const auto one = CongestionGame::simple({"A"}, {table({0, 1, 5})}, 3);
  CHECK_FALSE(theorem2_check(one, Partition({{0, 1}, {2}}, 3)).applicable);
}

TEST_CASE("frozen subgame") {
  const auto f = example4(0, 12, 16, 0, 12, 16);
  const CoalitionalGame discrete(f.game, Partition::discrete(3));
  const std::vector<std::optional<std::size_t>> fixed{std::nullopt, std::nullopt, 0};
  const std::vector<std::size_t> free{0, 1};
  const auto sub = fix_strategies_subgame(discrete, fixed, free);
  CHECK(sub.form.players() == 2);
  CHECK(sub.form.profile_count() == 4);
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto p = expand_profile(discrete, sub, s, fixed);
    CHECK(p.choices[2] == 0);
    for (std::size_t k = 0; k < 2; ++k) CHECK(sub.form.utility(s, k) == -player_cost(f.game, p, k));
  }
  // a two-player simple game with identical costs always has a potential
  CHECK(exact_potential(sub.form).has_potential());

  const std::vector<std::optional<std::size_t>> bad{0, std::nullopt, 0};
  CHECK_THROWS_AS(fix_strategies_subgame(discrete, bad, free), Error);
  const std::vector<std::optional<std::size_t>> missing{std::nullopt, std::nullopt, std::nullopt};
  CHECK_THROWS_AS(fix_strategies_subgame(discrete, missing, free), Error);
}

TEST_CASE("invariances") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 3 + seed % 2;
    const auto g = random_game(seed, n, 2 + seed % 2, seed % 2 ? CostClass::Linear : CostClass::Convex);
    const auto part = random_partition(seed, n, 2, true);
    const auto form = materialize(CoalitionalGame(g, part)).form;
    const bool has = exact_potential(form).has_potential();

    const auto moved = materialize(CoalitionalGame(shifted(g, Rational(7, 3)), part)).form;
    CHECK(exact_potential(moved).has_potential() == has);

    if (has) {
      auto t = exact_potential(form).table();
      for (auto& v : t.values) v += 11;
      CHECK(verify_exact_potential(form, t).ok);
    }
  }
}

TEST_CASE("decision agrees with the all-squares oracle") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const auto cls = static_cast<CostClass>(seed % 3);
    const auto g = random_game(mix_seed(seed, 3), n, 1 + seed % 3, cls);
    const auto part = random_partition(mix_seed(seed, 4), n, 1 + seed % std::min<std::size_t>(n, 3));
    const auto form = materialize(CoalitionalGame(g, part)).form;
    const auto v = exact_potential(form, {}, 1 + seed % 3);
    CAPTURE(seed);
    CHECK(v.has_potential() == oracle::has_exact_potential(form));
    if (v.has_potential()) {
      CHECK(verify_exact_potential(form, v.table()).ok);
    } else {
      CHECK(v.witness().residual != 0);
      CHECK(square_sum(form, v.witness()) == v.witness().residual);
    }
  }
}
