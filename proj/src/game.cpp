#include "ccg/game.hpp"

#include <algorithm>
#include <numeric>

namespace ccg {

namespace {

void normalize(std::vector<std::vector<ResourceSet>>& sets) {
  for (auto& list : sets) {
    for (auto& s : list) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

bool all_singletons(const std::vector<std::vector<ResourceSet>>& sets, std::size_t resources) {
  for (const auto& list : sets) {
    if (list.size() != resources) return false;
    for (std::size_t r = 0; r < resources; ++r) {
      if (list[r] != ResourceSet{r}) return false;
    }
  }
  return true;
}

void require_block(const CoalitionalGame& cg, std::size_t block) {
  if (block >= cg.block_count()) {
    throw Error(ErrorCode::InvalidBlock, "block " + std::to_string(block + 1) + " of " +
                                             std::to_string(cg.block_count()));
  }
}

// Members of `block` grouped by identical strategy sets, as runs of positions
// within the block. Canonical order sorts choices inside each group.
std::vector<std::vector<std::size_t>> symmetry_groups(const CoalitionalGame& cg, std::size_t block) {
  const auto& members = cg.partition().block(block);
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> leader;
  for (std::size_t pos = 0; pos < members.size(); ++pos) {
    const auto& set = cg.base().strategies(members[pos]);
    bool placed = false;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (cg.base().strategies(members[leader[g]]) == set) {
        groups[g].push_back(pos);
        placed = true;
        break;
      }
    }
    if (!placed) {
      groups.push_back({pos});
      leader.push_back(pos);
    }
  }
  return groups;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // exact: result * (n - k + i) is divisible by i at this point
    const std::uint64_t next = result * (n - k + i);
    if (next / (n - k + i) != result) return UINT64_MAX;
    result = next / i;
  }
  return result;
}

}  // namespace

CongestionGame::CongestionGame(std::vector<std::string> resources, std::vector<CostTable> costs,
                               std::vector<std::vector<ResourceSet>> strategy_sets)
    : resources_(std::move(resources)),
      costs_(std::move(costs)),
      strategy_sets_(std::move(strategy_sets)) {
  normalize(strategy_sets_);
  // mpq_class(p, q) is left unreduced; comparisons need canonical form
  for (auto& t : costs_)
    for (auto& v : t.values) v.canonicalize();
  simple_ = all_singletons(strategy_sets_, resources_.size());
}

CongestionGame CongestionGame::simple(std::vector<std::string> resources,
                                      std::vector<CostTable> costs, std::size_t players) {
  std::vector<ResourceSet> singletons;
  for (std::size_t r = 0; r < resources.size(); ++r) singletons.push_back({r});
  return CongestionGame(std::move(resources), std::move(costs),
                        std::vector<std::vector<ResourceSet>>(players, singletons));
}

void CongestionGame::require_simple(std::string_view what) const {
  if (!simple_) {
    throw Error(ErrorCode::PreconditionViolated, std::string(what) + " requires a simple game");
  }
}

std::string CongestionGame::resource_set_label(const ResourceSet& set) const {
  const bool short_names = std::all_of(resources_.begin(), resources_.end(),
                                       [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i > 0 && !short_names) out += '+';
    out += set[i] < resources_.size() ? resources_[set[i]] : "?";
  }
  return out;
}

std::string CongestionGame::strategy_label(std::size_t sub_agent, std::size_t index) const {
  return resource_set_label(strategy(sub_agent, index));
}

std::vector<ValidationIssue> validate_game(const CongestionGame& game) {
  std::vector<ValidationIssue> issues;
  const std::size_t n = game.players();
  const std::size_t rc = game.resource_count();
  if (rc == 0) issues.push_back({ErrorCode::LengthMismatch, "game has no resources"});
  if (game.costs().size() != rc) {
    issues.push_back({ErrorCode::LengthMismatch,
                      "expected " + std::to_string(rc) + " cost tables, got " +
                          std::to_string(game.costs().size())});
  }
  for (std::size_t r = 0; r < game.costs().size(); ++r) {
    const auto& name = r < rc ? game.resource_name(r) : "#" + std::to_string(r);
    const auto& values = game.cost(r).values;
    if (values.size() != n) {
      issues.push_back({ErrorCode::LengthMismatch, "cost table of " + name + " has " +
                                                       std::to_string(values.size()) +
                                                       " entries, expected " + std::to_string(n)});
    }
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[j] < 0) {
        issues.push_back({ErrorCode::NegativeCost, name + "(" + std::to_string(j + 1) +
                                                       ") = " + to_string(values[j])});
      }
      if (j > 0 && values[j] < values[j - 1]) {
        issues.push_back({ErrorCode::DecreasingCost,
                          name + "(" + std::to_string(j + 1) + ") < " + name + "(" +
                              std::to_string(j) + ")"});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& list = game.strategies(i);
    if (list.empty()) {
      issues.push_back({ErrorCode::EmptyStrategySet,
                        "sub-agent " + std::to_string(i + 1) + " has no strategies"});
    }
    for (const auto& s : list) {
      if (s.empty()) {
        issues.push_back({ErrorCode::EmptyStrategySet,
                          "sub-agent " + std::to_string(i + 1) + " has an empty strategy"});
      }
      for (ResourceId r : s) {
        if (r >= rc) {
          issues.push_back({ErrorCode::UnknownResource, "sub-agent " + std::to_string(i + 1) +
                                                            " references resource #" +
                                                            std::to_string(r)});
        }
      }
    }
  }
  return issues;
}

void require_valid(const CongestionGame& game) {
  auto issues = validate_game(game);
  if (!issues.empty()) throw Error(issues.front().code, issues.front().message);
}

Partition::Partition(std::vector<std::vector<std::size_t>> blocks, std::size_t players)
    : blocks_(std::move(blocks)), block_of_(players, SIZE_MAX) {
  for (auto& b : blocks_) {
    if (b.empty()) throw Error(ErrorCode::InvalidPartition, "empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    for (std::size_t i : blocks_[k]) {
      if (i >= players) {
        throw Error(ErrorCode::InvalidPartition, "sub-agent " + std::to_string(i + 1) +
                                                     " out of range 1.." + std::to_string(players));
      }
      if (block_of_[i] != SIZE_MAX) {
        throw Error(ErrorCode::InvalidPartition,
                    "sub-agent " + std::to_string(i + 1) + " appears in two blocks");
      }
      block_of_[i] = k;
    }
  }
  for (std::size_t i = 0; i < players; ++i) {
    if (block_of_[i] == SIZE_MAX) {
      throw Error(ErrorCode::InvalidPartition,
                  "sub-agent " + std::to_string(i + 1) + " is in no block");
    }
  }
}

Partition Partition::discrete(std::size_t players) {
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < players; ++i) blocks.push_back({i});
  return Partition(std::move(blocks), players);
}

Partition Partition::single_block(std::size_t players) {
  std::vector<std::size_t> all(players);
  std::iota(all.begin(), all.end(), 0);
  return Partition({all}, players);
}

std::size_t Partition::max_block_size() const {
  std::size_t m = 0;
  for (const auto& b : blocks_) m = std::max(m, b.size());
  return m;
}

int CongestionVector::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

CoalitionalGame::CoalitionalGame(CongestionGame base, Partition partition)
    : base_(std::move(base)), partition_(std::move(partition)) {
  if (partition_.players() != base_.players()) {
    throw Error(ErrorCode::InvalidPartition,
                "partition covers " + std::to_string(partition_.players()) +
                    " sub-agents, game has " + std::to_string(base_.players()));
  }
}

void require_valid_profile(const CongestionGame& game, const PureProfile& profile) {
  if (profile.choices.size() != game.players()) {
    throw Error(ErrorCode::InvalidProfile, "profile has " +
                                               std::to_string(profile.choices.size()) +
                                               " choices, game has " +
                                               std::to_string(game.players()) + " sub-agents");
  }
  for (std::size_t i = 0; i < game.players(); ++i) {
    if (profile.choices[i] >= game.strategies(i).size()) {
      throw Error(ErrorCode::InvalidProfile,
                  "sub-agent " + std::to_string(i + 1) + " strategy index out of range");
    }
  }
}

CongestionVector congestion(const CongestionGame& game, const PureProfile& profile) {
  require_valid_profile(game, profile);
  CongestionVector c{std::vector<int>(game.resource_count(), 0)};
  for (std::size_t i = 0; i < game.players(); ++i) {
    for (ResourceId r : game.strategy(i, profile.choices[i])) ++c.counts[r];
  }
  return c;
}

Rational player_cost(const CongestionGame& game, const PureProfile& profile,
                     std::size_t sub_agent) {
  const auto c = congestion(game, profile);
  if (sub_agent >= game.players()) {
    throw Error(ErrorCode::InvalidProfile, "no sub-agent " + std::to_string(sub_agent + 1));
  }
  Rational total = 0;
  for (ResourceId r : game.strategy(sub_agent, profile.choices[sub_agent])) {
    total += game.cost(r).at(static_cast<std::size_t>(c.counts[r]));
  }
  return total;
}

CongestionVector private_congestion(const CoalitionalGame& cg, const PureProfile& profile,
                                    std::size_t block) {
  require_block(cg, block);
  require_valid_profile(cg.base(), profile);
  CongestionVector c{std::vector<int>(cg.base().resource_count(), 0)};
  for (std::size_t i : cg.partition().block(block)) {
    for (ResourceId r : cg.base().strategy(i, profile.choices[i])) ++c.counts[r];
  }
  return c;
}

Rational coalition_utility(const CoalitionalGame& cg, const PureProfile& profile,
                           std::size_t block) {
  require_block(cg, block);
  const auto c = congestion(cg.base(), profile);
  Rational total = 0;
  for (std::size_t i : cg.partition().block(block)) {
    for (ResourceId r : cg.base().strategy(i, profile.choices[i])) {
      total -= cg.base().cost(r).at(static_cast<std::size_t>(c.counts[r]));
    }
  }
  return total;
}

Rational congestion_distance(const CongestionVector& u, const CongestionVector& v) {
  if (u.counts.size() != v.counts.size()) {
    throw Error(ErrorCode::MismatchedResources, "vectors over different resource sets");
  }
  if (u.total() != v.total()) {
    throw Error(ErrorCode::UnequalTotals, std::to_string(u.total()) + " vs " +
                                              std::to_string(v.total()));
  }
  long sum = 0;
  for (std::size_t r = 0; r < u.counts.size(); ++r) sum += std::abs(u.counts[r] - v.counts[r]);
  return make_rational(sum, 2);
}

PureProfile canonicalize(const CoalitionalGame& cg, const PureProfile& profile) {
  require_valid_profile(cg.base(), profile);
  PureProfile out = profile;
  for (std::size_t k = 0; k < cg.block_count(); ++k) {
    const auto& members = cg.partition().block(k);
    for (const auto& group : symmetry_groups(cg, k)) {
      std::vector<std::size_t> values;
      for (std::size_t pos : group) values.push_back(out.choices[members[pos]]);
      std::sort(values.begin(), values.end());
      for (std::size_t g = 0; g < group.size(); ++g) out.choices[members[group[g]]] = values[g];
    }
  }
  return out;
}

bool is_canonical_tuple(const CoalitionalGame& cg, std::size_t block,
                        std::span<const std::size_t> tuple) {
  for (const auto& group : symmetry_groups(cg, block)) {
    for (std::size_t g = 1; g < group.size(); ++g) {
      if (tuple[group[g - 1]] > tuple[group[g]]) return false;
    }
  }
  return true;
}

std::vector<BlockTuple> canonical_block_strategies(const CoalitionalGame& cg, std::size_t block) {
  require_block(cg, block);
  const auto& members = cg.partition().block(block);
  const std::size_t size = members.size();
  // previous[pos]: earlier position in the same symmetry group, or SIZE_MAX.
  std::vector<std::size_t> previous(size, SIZE_MAX);
  for (const auto& group : symmetry_groups(cg, block)) {
    for (std::size_t g = 1; g < group.size(); ++g) previous[group[g]] = group[g - 1];
  }
  BlockTuple tuple(size, 0);
  auto floor_of = [&](std::size_t pos) { return previous[pos] == SIZE_MAX ? 0 : tuple[previous[pos]]; };
  std::vector<BlockTuple> out;
  // Lexicographic odometer restricted to non-decreasing values within each group.
  while (true) {
    out.push_back(tuple);
    std::size_t pos = size;
    while (true) {
      if (pos == 0) return out;
      --pos;
      if (tuple[pos] + 1 < cg.base().strategies(members[pos]).size()) break;
    }
    ++tuple[pos];
    for (std::size_t later = pos + 1; later < size; ++later) tuple[later] = floor_of(later);
  }
}

std::uint64_t canonical_block_strategy_count(const CoalitionalGame& cg, std::size_t block) {
  require_block(cg, block);
  const auto& members = cg.partition().block(block);
  std::uint64_t total = 1;
  for (const auto& group : symmetry_groups(cg, block)) {
    const std::uint64_t m = cg.base().strategies(members[group.front()]).size();
    // multisets of size |group| over m strategies
    const std::uint64_t count = binomial(m + group.size() - 1, group.size());
    if (count != 0 && total > UINT64_MAX / count) return UINT64_MAX;
    total *= count;
  }
  return total;
}

BlockTuple block_tuple(const CoalitionalGame& cg, const PureProfile& profile, std::size_t block) {
  require_block(cg, block);
  BlockTuple out;
  for (std::size_t i : cg.partition().block(block)) out.push_back(profile.choices.at(i));
  return out;
}

void assign_block(const CoalitionalGame& cg, PureProfile& profile, std::size_t block,
                  std::span<const std::size_t> tuple) {
  require_block(cg, block);
  const auto& members = cg.partition().block(block);
  if (tuple.size() != members.size()) {
    throw Error(ErrorCode::InvalidProfile, "tuple size does not match block size");
  }
  for (std::size_t pos = 0; pos < members.size(); ++pos) profile.choices.at(members[pos]) = tuple[pos];
}

std::string block_tuple_label(const CoalitionalGame& cg, std::size_t block,
                              std::span<const std::size_t> tuple) {
  const auto& members = cg.partition().block(block);
  std::string out;
  for (std::size_t pos = 0; pos < tuple.size(); ++pos) {
    if (pos > 0) out += ',';
    out += cg.base().strategy_label(members[pos], tuple[pos]);
  }
  return out;
}

CongestionVector congestion_without_block(const CoalitionalGame& cg, const PureProfile& profile,
                                          std::size_t block) {
  require_block(cg, block);
  require_valid_profile(cg.base(), profile);
  CongestionVector c{std::vector<int>(cg.base().resource_count(), 0)};
  for (std::size_t i = 0; i < cg.base().players(); ++i) {
    if (cg.partition().block_of(i) == block) continue;
    for (ResourceId r : cg.base().strategy(i, profile.choices[i])) ++c.counts[r];
  }
  return c;
}

Rational block_cost_against(const CoalitionalGame& cg, std::size_t block,
                            std::span<const std::size_t> tuple, const CongestionVector& others) {
  const auto& members = cg.partition().block(block);
  std::vector<int> mine(cg.base().resource_count(), 0);
  for (std::size_t pos = 0; pos < members.size(); ++pos) {
    for (ResourceId r : cg.base().strategy(members[pos], tuple[pos])) ++mine[r];
  }
  Rational total = 0;
  for (std::size_t r = 0; r < mine.size(); ++r) {
    if (mine[r] == 0) continue;
    total += mine[r] * cg.base().cost(r).at(static_cast<std::size_t>(others.counts[r] + mine[r]));
  }
  return total;
}

}  // namespace ccg
