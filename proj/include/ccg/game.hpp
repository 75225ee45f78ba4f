#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccg/errors.hpp"
#include "ccg/rational.hpp"

namespace ccg {

/// Index of a resource in file order.
using ResourceId = std::size_t;

/// Sorted, duplicate-free set of resources picked by one sub-agent.
using ResourceSet = std::vector<ResourceId>;

/// Per-user cost of a resource as a function of its occupancy j = 1..n.
struct CostTable {
  std::vector<Rational> values;

  std::size_t size() const { return values.size(); }
  /// Cost per user when `occupancy` (>= 1) users share the resource.
  const Rational& at(std::size_t occupancy) const { return values.at(occupancy - 1); }

  friend bool operator==(const CostTable&, const CostTable&) = default;
};

/// A congestion game: resources with cost tables and per-sub-agent strategy sets.
///
/// Construction normalizes (each subset sorted and deduplicated, each strategy
/// list sorted lexicographically) but does not validate; call validate_game or
/// require_valid for that. Strategy indices used throughout the library refer to
/// positions in these normalized lists, so index order equals lexicographic order
/// over resource ids.
class CongestionGame {
 public:
  CongestionGame(std::vector<std::string> resources, std::vector<CostTable> costs,
                 std::vector<std::vector<ResourceSet>> strategy_sets);

  /// Every sub-agent may pick any single resource.
  static CongestionGame simple(std::vector<std::string> resources, std::vector<CostTable> costs,
                               std::size_t players);

  std::size_t players() const { return strategy_sets_.size(); }
  std::size_t resource_count() const { return resources_.size(); }
  const std::vector<std::string>& resources() const { return resources_; }
  const std::string& resource_name(ResourceId r) const { return resources_.at(r); }
  const std::vector<CostTable>& costs() const { return costs_; }
  const CostTable& cost(ResourceId r) const { return costs_.at(r); }
  const std::vector<ResourceSet>& strategies(std::size_t sub_agent) const {
    return strategy_sets_.at(sub_agent);
  }
  const ResourceSet& strategy(std::size_t sub_agent, std::size_t index) const {
    return strategy_sets_.at(sub_agent).at(index);
  }
  bool is_simple() const { return simple_; }

  /// Throws Error(PreconditionViolated) unless the game is simple.
  void require_simple(std::string_view what) const;

  /// Human-readable label for a strategy: resource names concatenated ("AB"),
  /// joined with '+' when any resource name is longer than one character.
  std::string strategy_label(std::size_t sub_agent, std::size_t index) const;
  std::string resource_set_label(const ResourceSet& set) const;

  friend bool operator==(const CongestionGame& a, const CongestionGame& b) {
    return a.resources_ == b.resources_ && a.costs_ == b.costs_ &&
           a.strategy_sets_ == b.strategy_sets_;
  }

 private:
  std::vector<std::string> resources_;
  std::vector<CostTable> costs_;
  std::vector<std::vector<ResourceSet>> strategy_sets_;
  bool simple_ = false;
};

struct ValidationIssue {
  ErrorCode code;
  std::string message;
};

/// Every invariant violation found; empty when the game is valid.
std::vector<ValidationIssue> validate_game(const CongestionGame& game);

/// Throws the first issue reported by validate_game, if any.
void require_valid(const CongestionGame& game);

/// Disjoint nonempty blocks of 0-based sub-agent indices covering 0..n-1.
///
/// Blocks are stored sorted internally and ordered by their smallest member.
class Partition {
 public:
  /// Throws Error(InvalidPartition) when blocks are empty, overlap, or miss a sub-agent.
  Partition(std::vector<std::vector<std::size_t>> blocks, std::size_t players);

  static Partition discrete(std::size_t players);
  static Partition single_block(std::size_t players);

  std::size_t players() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  const std::vector<std::size_t>& block(std::size_t k) const { return blocks_.at(k); }
  std::size_t block_of(std::size_t sub_agent) const { return block_of_.at(sub_agent); }
  std::size_t max_block_size() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// One strategy index per sub-agent.
struct PureProfile {
  std::vector<std::size_t> choices;

  friend bool operator==(const PureProfile&, const PureProfile&) = default;
  friend auto operator<=>(const PureProfile&, const PureProfile&) = default;
};

/// Strategy indices of one block's members, aligned with Partition::block(k).
using BlockTuple = std::vector<std::size_t>;

/// Occupancy count per resource.
struct CongestionVector {
  std::vector<int> counts;

  int total() const;
  friend bool operator==(const CongestionVector&, const CongestionVector&) = default;
};

/// A congestion game together with the coalition structure over its sub-agents.
class CoalitionalGame {
 public:
  /// Throws Error(InvalidPartition) if the partition does not cover base.players().
  CoalitionalGame(CongestionGame base, Partition partition);

  const CongestionGame& base() const { return base_; }
  const Partition& partition() const { return partition_; }
  std::size_t block_count() const { return partition_.block_count(); }

 private:
  CongestionGame base_;
  Partition partition_;
};

/// Default bound on joint-profile cells enumerated by any single call.
inline constexpr std::uint64_t kDefaultSizeLimit = 10'000'000;

struct Limits {
  std::uint64_t max_cells = kDefaultSizeLimit;
};

void require_valid_profile(const CongestionGame& game, const PureProfile& profile);

CongestionVector congestion(const CongestionGame& game, const PureProfile& profile);

/// Cost paid by one sub-agent; its utility is the negation.
Rational player_cost(const CongestionGame& game, const PureProfile& profile, std::size_t sub_agent);

CongestionVector private_congestion(const CoalitionalGame& cg, const PureProfile& profile,
                                    std::size_t block);

/// Sum of the block members' utilities (a non-positive number).
Rational coalition_utility(const CoalitionalGame& cg, const PureProfile& profile,
                           std::size_t block);

/// Half the L1 distance between two congestion vectors with equal totals.
Rational congestion_distance(const CongestionVector& u, const CongestionVector& v);

/// Sorts choices within each block among members that share a strategy set.
PureProfile canonicalize(const CoalitionalGame& cg, const PureProfile& profile);

/// True when the block's tuple is its own canonical representative.
bool is_canonical_tuple(const CoalitionalGame& cg, std::size_t block, std::span<const std::size_t> tuple);

/// All canonical tuples of a block in lexicographic order.
std::vector<BlockTuple> canonical_block_strategies(const CoalitionalGame& cg, std::size_t block);

/// Number of canonical tuples of a block, without enumerating them.
std::uint64_t canonical_block_strategy_count(const CoalitionalGame& cg, std::size_t block);

BlockTuple block_tuple(const CoalitionalGame& cg, const PureProfile& profile, std::size_t block);

/// Overwrites the block's coordinates of `profile` with `tuple`.
void assign_block(const CoalitionalGame& cg, PureProfile& profile, std::size_t block,
                  std::span<const std::size_t> tuple);

/// Label of a block tuple, e.g. "A,A,B" or "AB,AC".
std::string block_tuple_label(const CoalitionalGame& cg, std::size_t block,
                              std::span<const std::size_t> tuple);

/// Block cost sum_r m_r * P_r(e_r + m_r), where m is the block's private congestion
/// for `tuple` and e the congestion of every sub-agent outside the block.
Rational block_cost_against(const CoalitionalGame& cg, std::size_t block,
                            std::span<const std::size_t> tuple, const CongestionVector& others);

/// Congestion produced by every sub-agent outside `block`.
CongestionVector congestion_without_block(const CoalitionalGame& cg, const PureProfile& profile,
                                          std::size_t block);

}  // namespace ccg
