#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ccg/game.hpp"

namespace ccg {

// Constructive equilibrium for coalitional games over simple congestion games
// whose coalitions have at most two members.
//
// Pipeline: an equilibrium of the underlying game fixes a congestion vector c.
// If no resource is used by more sub-agents than there are coalitions, the
// sub-agents are rearranged so that no pair shares a resource (case 1), which is
// already an equilibrium. Otherwise every coalition is given a member on the most
// congested ("hub") resource (case 2), and pairs doubled on the hub split off one
// member at a time while that strictly lowers their cost.

enum class PairCase { Case1, Case2 };

struct PairMove {
  std::size_t block = 0;
  std::size_t sub_agent = 0;
  ResourceId from = 0;
  ResourceId to = 0;
  Rational cost_delta;  // block cost after minus before; always negative
};

struct PairSolveTrace {
  PureProfile underlying_profile;
  PairCase case_taken = PairCase::Case1;
  std::optional<ResourceId> hub_resource;
  PureProfile arrangement;
  std::vector<PairMove> moves;
  PureProfile result;
};

struct PairSolveOptions {
  /// Re-check the result with the brute-force NE test.
  bool verify = true;
};

/// Throws Error(PreconditionViolated) for non-simple games or blocks of size >= 3,
/// and the invariant-breach errors of the steps below if the construction fails.
PairSolveTrace solve_pair_ccg(const CongestionGame& game, const Partition& partition,
                              const PairSolveOptions& options = {});

/// Profile with congestion exactly `c` in which no pair shares a resource. Pairs go
/// first, each taking the two resources with most remaining capacity; singletons
/// then fill what is left in resource order.
PureProfile rearrange_case1(const CongestionGame& game, const Partition& partition,
                            const CongestionVector& c);

/// Profile with congestion `c` where every block has a member on `hub` and only
/// pairs on the hub are doubled. `hub` must be the lowest-index argmax of c and
/// exceed the block count.
PureProfile rearrange_case2(const CongestionGame& game, const Partition& partition,
                            const CongestionVector& c, ResourceId hub);

struct ImprovementResult {
  PureProfile profile;
  std::vector<PairMove> moves;
};

/// Splits doubled pairs off the hub while a split strictly lowers the pair's cost.
/// Throws Error(LoopBoundExceeded) or Error(NotNashAtExit) on invariant breach.
ImprovementResult improvement_loop(const CongestionGame& game, const Partition& partition,
                                   const PureProfile& start, ResourceId hub,
                                   const PairSolveOptions& options = {});

}  // namespace ccg
