#include "ccg/potential.hpp"

#include <algorithm>
#include <thread>

namespace ccg {

namespace {

std::optional<PotentialViolation> first_violation_in(const StrategicForm& game,
                                                     const PotentialTable& table,
                                                     std::uint64_t begin, std::uint64_t end) {
  for (std::uint64_t s = begin; s < end; ++s) {
    for (std::size_t p = 0; p < game.players(); ++p) {
      const std::size_t own = game.strategy_of(s, p);
      for (std::size_t t = 0; t < game.strategy_count(p); ++t) {
        if (t == own) continue;
        const std::uint64_t dev = game.deviate(s, p, t);
        Rational dp = table.values[s] - table.values[dev];
        Rational du = game.utility(s, p) - game.utility(dev, p);
        if (dp != du) return PotentialViolation{p, s, t, std::move(dp), std::move(du)};
      }
    }
  }
  return std::nullopt;
}

std::optional<FourCycleWitness> first_nonzero_cycle(const StrategicForm& game) {
  for (std::uint64_t s = 0; s < game.profile_count(); ++s) {
    const auto base = game.profile(s);
    for (std::size_t i = 0; i < game.players(); ++i) {
      for (std::size_t j = i + 1; j < game.players(); ++j) {
        for (std::size_t ti = 0; ti < game.strategy_count(i); ++ti) {
          if (ti == base[i]) continue;
          for (std::size_t tj = 0; tj < game.strategy_count(j); ++tj) {
            if (tj == base[j]) continue;
            Rational r = four_cycle_residual(game, i, j, base, ti, tj);
            if (r != 0) return FourCycleWitness{i, j, base, ti, tj, std::move(r)};
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::array<std::vector<std::size_t>, 4> FourCycleWitness::cycle() const {
  auto a = base;
  auto b = base;
  b[player_i] = t_i;
  auto c = b;
  c[player_j] = t_j;
  auto d = base;
  d[player_j] = t_j;
  return {a, b, c, d};
}

PotentialTable build_potential_by_path(const StrategicForm& game, const Limits& limits) {
  if (game.profile_count() > limits.max_cells) {
    throw Error(ErrorCode::SizeLimitExceeded, "potential table exceeds " +
                                                  std::to_string(limits.max_cells) + " profiles");
  }
  PotentialTable table{std::vector<Rational>(game.profile_count())};
  for (std::uint64_t s = 0; s < game.profile_count(); ++s) {
    // Walk from the base profile, switching players 0, 1, ... to their coordinates in s.
    std::uint64_t at = 0;
    Rational value = 0;
    for (std::size_t p = 0; p < game.players(); ++p) {
      const std::size_t target = game.strategy_of(s, p);
      if (target == 0) continue;
      const std::uint64_t next = game.deviate(at, p, target);
      value += game.utility(next, p) - game.utility(at, p);
      at = next;
    }
    table.values[s] = std::move(value);
  }
  return table;
}

PotentialCheck verify_exact_potential(const StrategicForm& game, const PotentialTable& table,
                                      unsigned threads) {
  if (table.values.size() != game.profile_count()) {
    throw Error(ErrorCode::InvalidIndices, "potential table is not total over the game's profiles");
  }
  const std::uint64_t cells = game.profile_count();
  const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, cells));
  std::vector<std::optional<PotentialViolation>> found(workers);
  auto work = [&](unsigned t) {
    found[t] = first_violation_in(game, table, cells * t / workers, cells * (t + 1) / workers);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t);
  }
  for (auto& v : found) {
    if (v) return {false, std::move(v)};
  }
  return {true, std::nullopt};
}

Rational four_cycle_residual(const StrategicForm& game, std::size_t i, std::size_t j,
                             std::span<const std::size_t> base, std::size_t t_i, std::size_t t_j) {
  if (i == j || i >= game.players() || j >= game.players()) {
    throw Error(ErrorCode::InvalidIndices, "need two distinct players");
  }
  if (t_i >= game.strategy_count(i) || t_j >= game.strategy_count(j)) {
    throw Error(ErrorCode::InvalidIndices, "alternative strategy out of range");
  }
  const std::uint64_t s = game.index(base);
  const std::uint64_t s_i = game.deviate(s, i, t_i);
  const std::uint64_t s_ij = game.deviate(s_i, j, t_j);
  const std::uint64_t s_j = game.deviate(s, j, t_j);
  return (game.utility(s, i) - game.utility(s_i, i)) + (game.utility(s_i, j) - game.utility(s_ij, j)) +
         (game.utility(s_ij, i) - game.utility(s_j, i)) + (game.utility(s_j, j) - game.utility(s, j));
}

PotentialVerdict exact_potential(const StrategicForm& game, const Limits& limits, unsigned threads) {
  PotentialTable table = build_potential_by_path(game, limits);
  const PotentialCheck check = verify_exact_potential(game, table, threads);
  if (check.ok) return {std::move(table)};

  // The integration paths to s and to (s_-i, t) agree up to player i and then
  // move the same later players; the mismatch is the sum of the (i, j) squares
  // along that ladder, so one of them is nonzero.
  const auto& v = *check.first_violation;
  const auto s = game.profile(v.profile);
  for (std::size_t j = v.player + 1; j < game.players(); ++j) {
    if (s[j] == 0) continue;
    auto base = s;
    for (std::size_t later = j; later < game.players(); ++later) base[later] = 0;
    Rational r = four_cycle_residual(game, v.player, j, base, v.alternative, s[j]);
    if (r != 0) return {FourCycleWitness{v.player, j, std::move(base), v.alternative, s[j], std::move(r)}};
  }
  if (auto w = first_nonzero_cycle(game)) return {std::move(*w)};
  throw Error(ErrorCode::InvalidIndices, "verification failed but no nonzero four-cycle exists");
}

LinearityEntry is_linear(const CostTable& table) {
  const auto& v = table.values;
  LinearityEntry out;
  for (std::size_t j = 1; j + 1 < v.size(); ++j) {
    if (v[j + 1] - 2 * v[j] + v[j - 1] != 0) {
      out.first_violation = j + 1;
      return out;
    }
  }
  out.linear = true;
  const Rational slope = v.size() >= 2 ? Rational(v[1] - v[0]) : Rational(0);
  out.intercept = v.empty() ? Rational(0) : Rational(v[0] - slope);
  out.slope = slope;
  return out;
}

Theorem2Verdict theorem2_check(const CongestionGame& game, const Partition& partition,
                               const Limits& limits) {
  game.require_simple("theorem2_check");
  const auto& blocks = partition.blocks();
  const bool has_single = std::any_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.size() == 1; });
  const bool has_pair = std::any_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.size() == 2; });

  Theorem2Verdict verdict;
  verdict.applicable = has_single && has_pair && game.resource_count() >= 2;
  verdict.all_linear = true;
  for (const auto& cost : game.costs()) {
    verdict.linearity.push_back(is_linear(cost));
    verdict.all_linear = verdict.all_linear && verdict.linearity.back().linear;
  }
  const auto materialized = materialize(CoalitionalGame(game, partition), limits);
  verdict.potential = exact_potential(materialized.form, limits);
  verdict.has_potential = verdict.potential.has_potential();
  verdict.consistent = !verdict.applicable || verdict.all_linear == verdict.has_potential;
  if (!verdict.consistent) {
    throw Error(ErrorCode::Theorem2Violated,
                std::string("costs are ") + (verdict.all_linear ? "linear" : "not linear") +
                    " but the coalitional game " +
                    (verdict.has_potential ? "has" : "has no") + " exact potential");
  }
  return verdict;
}

}  // namespace ccg
