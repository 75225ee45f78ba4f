#include "ccg/equilibria.hpp"

#include <algorithm>
#include <thread>

#include "ccg/strategic_form.hpp"

namespace ccg {

namespace {

using Spaces = std::vector<std::vector<BlockTuple>>;

// Best reply of `block` over `space` against the rest of `profile`.
BestReplySet best_over(const CoalitionalGame& cg, const PureProfile& profile, std::size_t block,
                       const std::vector<BlockTuple>& space) {
  const auto others = congestion_without_block(cg, profile, block);
  BestReplySet out{block, {}, 0};
  bool first = true;
  for (const auto& tuple : space) {
    Rational u = -block_cost_against(cg, block, tuple, others);
    if (first || u > out.value) {
      out.value = u;
      out.replies.clear();
      first = false;
    }
    if (u == out.value) out.replies.push_back(tuple);
  }
  return out;
}

NeCheck check_against(const CoalitionalGame& cg, const PureProfile& profile, const Spaces& spaces) {
  for (std::size_t k = 0; k < cg.block_count(); ++k) {
    const auto others = congestion_without_block(cg, profile, k);
    const auto mine = block_tuple(cg, profile, k);
    const Rational current = -block_cost_against(cg, k, mine, others);
    const BestReplySet best = best_over(cg, profile, k, spaces[k]);
    if (best.value > current) {
      return {false, Deviation{k, best.replies.front(), current, best.value}};
    }
  }
  return {true, std::nullopt};
}

Spaces canonical_spaces(const CoalitionalGame& cg, const Limits& limits) {
  std::vector<std::uint64_t> counts;
  for (std::size_t k = 0; k < cg.block_count(); ++k) {
    counts.push_back(canonical_block_strategy_count(cg, k));
  }
  checked_profile_count(counts, limits, "coalitional game");
  Spaces spaces;
  for (std::size_t k = 0; k < cg.block_count(); ++k) spaces.push_back(canonical_block_strategies(cg, k));
  return spaces;
}

Spaces restricted_spaces(const CoalitionalGame& cg, const Limits& limits) {
  Spaces spaces;
  std::vector<std::uint64_t> counts;
  for (std::size_t k = 0; k < cg.block_count(); ++k) {
    spaces.push_back(restricted_strategies(cg, k));
    counts.push_back(spaces.back().size());
  }
  checked_profile_count(counts, limits, "restricted coalitional game");
  return spaces;
}

// Enumerates every joint profile of `spaces` and keeps those stable against
// deviations within the same spaces. Contiguous index chunks go to worker threads
// and are concatenated in chunk order, so the result is thread-count independent.
NeReport enumerate_over(const CoalitionalGame& cg, const Spaces& spaces,
                        const EnumerationOptions& options) {
  std::vector<std::uint64_t> counts;
  for (const auto& s : spaces) counts.push_back(s.size());
  const std::uint64_t cells = checked_profile_count(counts, options.limits, "coalitional game");

  auto decode = [&](std::uint64_t index) {
    PureProfile profile{std::vector<std::size_t>(cg.base().players(), 0)};
    for (std::size_t k = spaces.size(); k-- > 0;) {
      assign_block(cg, profile, k, spaces[k][index % spaces[k].size()]);
      index /= spaces[k].size();
    }
    return profile;
  };

  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, std::max<std::uint64_t>(cells, 1)));
  std::vector<NeReport> parts(threads);
  auto work = [&](unsigned t) {
    const std::uint64_t begin = cells * t / threads;
    const std::uint64_t end = cells * (t + 1) / threads;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      PureProfile profile = decode(idx);
      NeCheck check = check_against(cg, profile, spaces);
      if (check.is_ne) {
        parts[t].equilibria.push_back(std::move(profile));
      } else if (options.collect_witnesses) {
        parts[t].rejected.emplace_back(std::move(profile), std::move(*check.witness));
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  NeReport report;
  for (auto& part : parts) {
    std::move(part.equilibria.begin(), part.equilibria.end(), std::back_inserter(report.equilibria));
    std::move(part.rejected.begin(), part.rejected.end(), std::back_inserter(report.rejected));
  }
  return report;
}

}  // namespace

Rational rosenthal_aggregate(const CongestionGame& game, const CongestionVector& c) {
  Rational total = 0;
  for (std::size_t r = 0; r < game.resource_count(); ++r) {
    for (int j = 1; j <= c.counts.at(r); ++j) total += game.cost(r).at(static_cast<std::size_t>(j));
  }
  return total;
}

BestResponseRun best_response_dynamics(const CongestionGame& game) {
  game.require_simple("best-response dynamics");
  require_valid(game);
  const std::size_t n = game.players();
  const std::size_t rc = game.resource_count();
  BestResponseRun run{PureProfile{std::vector<std::size_t>(n, 0)}, 0, {}};
  std::vector<int> load(rc, 0);
  load[0] = static_cast<int>(n);
  run.aggregate_trace.push_back(rosenthal_aggregate(game, CongestionVector{load}));

  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t here = run.profile.choices[i];
      const Rational& current = game.cost(here).at(static_cast<std::size_t>(load[here]));
      std::size_t target = here;
      Rational best = current;
      for (std::size_t x = 0; x < rc; ++x) {
        if (x == here) continue;
        const Rational& alt = game.cost(x).at(static_cast<std::size_t>(load[x] + 1));
        if (alt < best) {
          best = alt;
          target = x;
        }
      }
      if (target != here) {
        --load[here];
        ++load[target];
        run.profile.choices[i] = target;
        ++run.moves;
        run.aggregate_trace.push_back(rosenthal_aggregate(game, CongestionVector{load}));
        moved = true;
      }
    }
  }
  return run;
}

PureProfile underlying_pure_ne(const CongestionGame& game) {
  return best_response_dynamics(game).profile;
}

bool is_ne_congestion(const CongestionGame& game, const CongestionVector& c) {
  game.require_simple("is_ne_congestion");
  if (c.counts.size() != game.resource_count() ||
      c.total() != static_cast<int>(game.players()) ||
      std::any_of(c.counts.begin(), c.counts.end(), [](int v) { return v < 0; })) {
    throw Error(ErrorCode::InvalidVector, "congestion vector must have one non-negative entry per "
                                          "resource and total the sub-agent count");
  }
  for (std::size_t r = 0; r < c.counts.size(); ++r) {
    if (c.counts[r] == 0) continue;
    const Rational& stay = game.cost(r).at(static_cast<std::size_t>(c.counts[r]));
    for (std::size_t x = 0; x < c.counts.size(); ++x) {
      if (x != r && stay > game.cost(x).at(static_cast<std::size_t>(c.counts[x] + 1))) return false;
    }
  }
  return true;
}

BestReplySet coalition_best_response(const CoalitionalGame& cg, const PureProfile& profile,
                                     std::size_t block, const Limits& limits) {
  const std::uint64_t count = canonical_block_strategy_count(cg, block);
  if (count > limits.max_cells) {
    throw Error(ErrorCode::SizeLimitExceeded, "block strategy space exceeds " +
                                                  std::to_string(limits.max_cells));
  }
  return best_over(cg, profile, block, canonical_block_strategies(cg, block));
}

BestReplySet restricted_best_response(const CoalitionalGame& cg, const PureProfile& profile,
                                      std::size_t block) {
  return best_over(cg, profile, block, restricted_strategies(cg, block));
}

NeCheck is_ccg_ne(const CoalitionalGame& cg, const PureProfile& profile, const Limits& limits) {
  require_valid_profile(cg.base(), profile);
  for (std::size_t k = 0; k < cg.block_count(); ++k) {
    const BestReplySet best = coalition_best_response(cg, profile, k, limits);
    const Rational current = coalition_utility(cg, profile, k);
    if (best.value > current) return {false, Deviation{k, best.replies.front(), current, best.value}};
  }
  return {true, std::nullopt};
}

NeCheck is_restricted_ne(const CoalitionalGame& cg, const PureProfile& profile) {
  require_valid_profile(cg.base(), profile);
  Spaces spaces;
  for (std::size_t k = 0; k < cg.block_count(); ++k) spaces.push_back(restricted_strategies(cg, k));
  return check_against(cg, profile, spaces);
}

NeReport enumerate_pure_ne(const CoalitionalGame& cg, const EnumerationOptions& options) {
  return enumerate_over(cg, canonical_spaces(cg, options.limits), options);
}

std::vector<BlockTuple> restricted_strategies(const CoalitionalGame& cg, std::size_t block) {
  cg.base().require_simple("the restricted coalitional game");
  if (block >= cg.block_count()) throw Error(ErrorCode::InvalidBlock, "no such block");
  const std::size_t size = cg.partition().block(block).size();
  const std::size_t rc = cg.base().resource_count();
  if (size > rc) {
    throw Error(ErrorCode::BlockLargerThanResourceSet,
                "block " + std::to_string(block + 1) + " has " + std::to_string(size) +
                    " members but there are only " + std::to_string(rc) + " resources");
  }
  // Increasing combinations of resource indices, lexicographic.
  std::vector<BlockTuple> out;
  BlockTuple combo(size);
  for (std::size_t i = 0; i < size; ++i) combo[i] = i;
  while (true) {
    out.push_back(combo);
    std::size_t pos = size;
    while (pos > 0 && combo[pos - 1] == rc - size + pos - 1) --pos;
    if (pos == 0) return out;
    ++combo[pos - 1];
    for (std::size_t i = pos; i < size; ++i) combo[i] = combo[i - 1] + 1;
  }
}

NeReport enumerate_pure_ne_restricted(const CoalitionalGame& cg,
                                      const EnumerationOptions& options) {
  return enumerate_over(cg, restricted_spaces(cg, options.limits), options);
}

bool has_distinct_block_resources(const CoalitionalGame& cg, const PureProfile& profile) {
  require_valid_profile(cg.base(), profile);
  for (std::size_t k = 0; k < cg.block_count(); ++k) {
    std::vector<ResourceId> used;
    for (std::size_t i : cg.partition().block(k)) {
      const auto& set = cg.base().strategy(i, profile.choices[i]);
      used.insert(used.end(), set.begin(), set.end());
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) return false;
  }
  return true;
}

PropositionVerdict check_proposition1(const CoalitionalGame& cg, const PureProfile& profile) {
  cg.base().require_simple("check_proposition1");
  PropositionVerdict verdict;
  verdict.applicable = has_distinct_block_resources(cg, profile) &&
                       is_ne_congestion(cg.base(), congestion(cg.base(), profile));
  if (!verdict.applicable) return verdict;
  verdict.holds = is_ccg_ne(cg, profile).is_ne;
  if (!verdict.holds) {
    throw Error(ErrorCode::Proposition1Violated,
                "profile with distinct block resources and NE congestion is not a CCG equilibrium");
  }
  return verdict;
}

PropositionVerdict check_lemma1(const CoalitionalGame& cg, const PureProfile& profile) {
  cg.base().require_simple("check_lemma1");
  for (std::size_t k = 0; k < cg.block_count(); ++k) restricted_strategies(cg, k);
  if (!has_distinct_block_resources(cg, profile)) {
    throw Error(ErrorCode::PreconditionViolated, "profile lies outside the restricted game");
  }
  PropositionVerdict verdict;
  verdict.applicable = is_ne_congestion(cg.base(), congestion(cg.base(), profile));
  if (!verdict.applicable) return verdict;
  verdict.holds = is_restricted_ne(cg, profile).is_ne;
  if (!verdict.holds) {
    throw Error(ErrorCode::Lemma1Violated,
                "profile with NE congestion is not an equilibrium of the restricted game");
  }
  return verdict;
}

}  // namespace ccg
