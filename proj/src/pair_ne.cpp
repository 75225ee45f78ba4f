#include "ccg/pair_ne.hpp"

#include <algorithm>
#include <numeric>

#include "ccg/equilibria.hpp"

namespace ccg {

namespace {

void require_pairs(const CongestionGame& game, const Partition& partition) {
  game.require_simple("the pair construction");
  if (partition.players() != game.players()) {
    throw Error(ErrorCode::PreconditionViolated, "partition does not match the game");
  }
  if (partition.max_block_size() > 2) {
    throw Error(ErrorCode::PreconditionViolated,
                "the pair construction needs blocks of size <= 2, got " +
                    std::to_string(partition.max_block_size()));
  }
}

ResourceId lowest_argmax(const CongestionVector& c) {
  return static_cast<ResourceId>(std::max_element(c.counts.begin(), c.counts.end()) - c.counts.begin());
}

void require_ne_vector(const CongestionGame& game, const CongestionVector& c) {
  if (!is_ne_congestion(game, c)) {
    throw Error(ErrorCode::PreconditionViolated, "congestion vector is not an equilibrium vector");
  }
}

}  // namespace

PureProfile rearrange_case1(const CongestionGame& game, const Partition& partition,
                            const CongestionVector& c) {
  require_pairs(game, partition);
  require_ne_vector(game, c);
  const int blocks = static_cast<int>(partition.block_count());
  if (*std::max_element(c.counts.begin(), c.counts.end()) > blocks) {
    throw Error(ErrorCode::PreconditionViolated, "some resource holds more sub-agents than blocks");
  }

  std::vector<int> capacity = c.counts;
  PureProfile out{std::vector<std::size_t>(game.players(), 0)};
  std::vector<ResourceId> order(capacity.size());
  for (const auto& block : partition.blocks()) {
    if (block.size() != 2) continue;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](ResourceId a, ResourceId b) { return capacity[a] > capacity[b]; });
    if (order.size() < 2 || capacity[order[1]] == 0) {
      throw Error(ErrorCode::RearrangementInfeasible, "no two distinct resources left for a pair");
    }
    const ResourceId lo = std::min(order[0], order[1]);
    const ResourceId hi = std::max(order[0], order[1]);
    --capacity[lo];
    --capacity[hi];
    out.choices[block[0]] = lo;
    out.choices[block[1]] = hi;
  }
  for (const auto& block : partition.blocks()) {
    if (block.size() != 1) continue;
    auto slot = std::find_if(capacity.begin(), capacity.end(), [](int v) { return v > 0; });
    if (slot == capacity.end()) {
      throw Error(ErrorCode::RearrangementInfeasible, "no capacity left for a singleton");
    }
    --*slot;
    out.choices[block[0]] = static_cast<std::size_t>(slot - capacity.begin());
  }
  return out;
}

PureProfile rearrange_case2(const CongestionGame& game, const Partition& partition,
                            const CongestionVector& c, ResourceId hub) {
  require_pairs(game, partition);
  require_ne_vector(game, c);
  if (hub != lowest_argmax(c)) {
    throw Error(ErrorCode::PreconditionViolated, "hub must be the lowest-index most congested resource");
  }
  const int blocks = static_cast<int>(partition.block_count());
  if (c.counts[hub] <= blocks) {
    throw Error(ErrorCode::PreconditionViolated, "hub congestion does not exceed the block count");
  }

  PureProfile out{std::vector<std::size_t>(game.players(), hub)};
  int doubled = c.counts[hub] - blocks;
  std::vector<int> off_hub = c.counts;
  off_hub[hub] = 0;
  std::size_t next_slot = 0;
  for (const auto& block : partition.blocks()) {
    if (block.size() != 2) continue;
    if (doubled > 0) {
      --doubled;
      continue;
    }
    while (next_slot < off_hub.size() && off_hub[next_slot] == 0) ++next_slot;
    if (next_slot == off_hub.size()) {
      throw Error(ErrorCode::PreconditionViolated, "off-hub slots and pairs do not match");
    }
    --off_hub[next_slot];
    out.choices[block[1]] = next_slot;
  }
  if (doubled != 0 || std::any_of(off_hub.begin(), off_hub.end(), [](int v) { return v != 0; })) {
    throw Error(ErrorCode::PreconditionViolated, "congestion vector cannot be arranged around the hub");
  }
  return out;
}

ImprovementResult improvement_loop(const CongestionGame& game, const Partition& partition,
                                   const PureProfile& start, ResourceId hub,
                                   const PairSolveOptions& options) {
  require_pairs(game, partition);
  ImprovementResult out{start, {}};
  std::vector<int> load = congestion(game, start).counts;
  auto doubled_on_hub = [&](const std::vector<std::size_t>& block) {
    return block.size() == 2 && out.profile.choices[block[0]] == hub &&
           out.profile.choices[block[1]] == hub;
  };
  const auto bound = static_cast<std::size_t>(
      std::count_if(partition.blocks().begin(), partition.blocks().end(), doubled_on_hub));

  while (true) {
    const auto& blocks = partition.blocks();
    auto mover = std::find_if(blocks.begin(), blocks.end(), doubled_on_hub);
    if (mover == blocks.end()) break;

    std::optional<ResourceId> target;
    for (ResourceId x = 0; x < game.resource_count(); ++x) {
      if (x == hub) continue;
      if (!target || game.cost(x).at(load[x] + 1) < game.cost(*target).at(load[*target] + 1)) target = x;
    }
    if (!target) break;

    const Rational before = 2 * game.cost(hub).at(load[hub]);
    const Rational after = game.cost(hub).at(load[hub] - 1) + game.cost(*target).at(load[*target] + 1);
    if (!(after < before)) break;

    if (out.moves.size() == bound) {
      throw Error(ErrorCode::LoopBoundExceeded,
                  "more moves than initially doubled pairs (" + std::to_string(bound) + ")");
    }
    const std::size_t sub_agent = (*mover)[1];
    out.profile.choices[sub_agent] = *target;
    --load[hub];
    ++load[*target];
    out.moves.push_back(PairMove{static_cast<std::size_t>(mover - blocks.begin()), sub_agent, hub,
                                 *target, after - before});
  }

  if (options.verify && !is_ccg_ne(CoalitionalGame(game, partition), out.profile).is_ne) {
    throw Error(ErrorCode::NotNashAtExit, "improvement loop ended outside equilibrium");
  }
  return out;
}

PairSolveTrace solve_pair_ccg(const CongestionGame& game, const Partition& partition,
                              const PairSolveOptions& options) {
  require_pairs(game, partition);
  require_valid(game);

  PairSolveTrace trace;
  trace.underlying_profile = underlying_pure_ne(game);
  const CongestionVector c = congestion(game, trace.underlying_profile);
  const int blocks = static_cast<int>(partition.block_count());

  if (*std::max_element(c.counts.begin(), c.counts.end()) <= blocks) {
    trace.case_taken = PairCase::Case1;
    trace.arrangement = rearrange_case1(game, partition, c);
    trace.result = trace.arrangement;
    if (options.verify && !is_ccg_ne(CoalitionalGame(game, partition), trace.result).is_ne) {
      throw Error(ErrorCode::NotNashAtExit, "case 1 arrangement is not an equilibrium");
    }
    return trace;
  }

  trace.case_taken = PairCase::Case2;
  trace.hub_resource = lowest_argmax(c);
  trace.arrangement = rearrange_case2(game, partition, c, *trace.hub_resource);
  auto improved = improvement_loop(game, partition, trace.arrangement, *trace.hub_resource, options);
  trace.moves = std::move(improved.moves);
  trace.result = std::move(improved.profile);
  return trace;
}

}  // namespace ccg
