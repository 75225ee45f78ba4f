#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccg/game.hpp"
#include "ccg/rational.hpp"

namespace ccg {

/// Finite normal-form game with a total rational utility table.
///
/// Joint profiles are indexed in mixed radix with player 0 most significant,
/// so index order is lexicographic order over strategy indices.
class StrategicForm {
 public:
  /// `utilities` holds profile_count() * players entries, profile-major.
  StrategicForm(std::vector<std::vector<std::string>> labels, std::vector<Rational> utilities);

  std::size_t players() const { return labels_.size(); }
  std::size_t strategy_count(std::size_t player) const { return labels_.at(player).size(); }
  std::uint64_t profile_count() const { return profile_count_; }
  const std::vector<std::string>& labels(std::size_t player) const { return labels_.at(player); }
  /// Index distance between profiles that differ by one step in `player`'s strategy.
  std::uint64_t stride(std::size_t player) const { return strides_.at(player); }

  std::uint64_t index(std::span<const std::size_t> profile) const;
  std::vector<std::size_t> profile(std::uint64_t index) const;
  std::size_t strategy_of(std::uint64_t index, std::size_t player) const {
    return static_cast<std::size_t>((index / strides_[player]) % labels_[player].size());
  }
  /// Index of the profile obtained by switching `player` to `strategy`.
  std::uint64_t deviate(std::uint64_t index, std::size_t player, std::size_t strategy) const;

  const Rational& utility(std::uint64_t index, std::size_t player) const {
    return utilities_[index * labels_.size() + player];
  }
  const std::vector<Rational>& utility_table() const { return utilities_; }

  friend bool operator==(const StrategicForm&, const StrategicForm&) = default;

 private:
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t profile_count_ = 1;
  std::vector<Rational> utilities_;
};

/// Checked product of strategy counts; throws Error(SizeLimitExceeded) above the bound.
std::uint64_t checked_profile_count(std::span<const std::uint64_t> counts, const Limits& limits,
                                    std::string_view what);

/// Every pure Nash equilibrium of a normal-form game, as profile indices in order.
/// Generic brute force, independent of any congestion structure.
std::vector<std::uint64_t> normal_form_pure_ne(const StrategicForm& game);

/// A materialized coalitional game: the normal form plus the block tuple behind
/// every strategy label.
struct MaterializedGame {
  StrategicForm form;
  std::vector<std::size_t> blocks;                      // player p of `form` is block blocks[p]
  std::vector<std::vector<BlockTuple>> block_strategies;  // per player, tuple per strategy index
};

/// Normal form of the coalitional game over canonical block tuples.
/// Throws Error(SizeLimitExceeded) when the joint-profile count exceeds limits.
MaterializedGame materialize(const CoalitionalGame& cg, const Limits& limits = {});

/// Normal form over `free_blocks` with every other sub-agent frozen at `fixed`.
/// `fixed[i]` must be set exactly for sub-agents outside the free blocks;
/// otherwise throws Error(CoverageMismatch).
MaterializedGame fix_strategies_subgame(const CoalitionalGame& cg,
                                        const std::vector<std::optional<std::size_t>>& fixed,
                                        std::span<const std::size_t> free_blocks,
                                        const Limits& limits = {});

/// The sub-agent profile behind a materialized joint profile index. Sub-agents
/// outside the free blocks take their frozen strategies from `fixed`.
PureProfile expand_profile(const CoalitionalGame& cg, const MaterializedGame& game,
                           std::uint64_t index,
                           const std::vector<std::optional<std::size_t>>& fixed = {});

}  // namespace ccg
