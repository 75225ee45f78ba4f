#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ccg/game.hpp"

namespace ccg {

/// Rosenthal aggregate sum_r sum_{j=1..c_r} P_r(j).
Rational rosenthal_aggregate(const CongestionGame& game, const CongestionVector& c);

/// Outcome of best-response dynamics on a simple game.
struct BestResponseRun {
  PureProfile profile;
  std::size_t moves = 0;
  /// Rosenthal aggregate at the start and after every move.
  std::vector<Rational> aggregate_trace;
};

/// Deterministic best-response dynamics from "everyone on the first resource":
/// sweeps sub-agents by index, moving each to its cheapest resource (lowest index
/// on ties) whenever that strictly lowers its cost, until a sweep moves nobody.
BestResponseRun best_response_dynamics(const CongestionGame& game);

/// A pure Nash equilibrium of a simple game, from best_response_dynamics.
PureProfile underlying_pure_ne(const CongestionGame& game);

/// Whether `c` is the congestion vector of some pure NE of the simple game:
/// P_r(c_r) <= P_x(c_x + 1) for every occupied r and every x != r.
/// Throws Error(InvalidVector) when c does not total n or has the wrong length.
bool is_ne_congestion(const CongestionGame& game, const CongestionVector& c);

/// Every maximizer of a block's utility against fixed opponents.
struct BestReplySet {
  std::size_t block = 0;
  std::vector<BlockTuple> replies;  // canonical tuples, lexicographic order
  Rational value;                   // the common best utility
};

/// Exhaustive best reply over the block's canonical tuples (for simple games these
/// are exactly its private congestion vectors). The block's own coordinates in
/// `profile` are ignored.
BestReplySet coalition_best_response(const CoalitionalGame& cg, const PureProfile& profile,
                                     std::size_t block, const Limits& limits = {});

/// Best reply restricted to tuples whose members use pairwise-distinct resources.
BestReplySet restricted_best_response(const CoalitionalGame& cg, const PureProfile& profile,
                                      std::size_t block);

/// A strictly improving unilateral block deviation.
struct Deviation {
  std::size_t block = 0;
  BlockTuple reply;
  Rational current;   // block utility before deviating
  Rational improved;  // block utility after deviating
};

struct NeCheck {
  bool is_ne = false;
  std::optional<Deviation> witness;

  explicit operator bool() const { return is_ne; }
};

NeCheck is_ccg_ne(const CoalitionalGame& cg, const PureProfile& profile, const Limits& limits = {});

/// NE check where every block may only deviate within the restricted space.
NeCheck is_restricted_ne(const CoalitionalGame& cg, const PureProfile& profile);

struct NeReport {
  std::vector<PureProfile> equilibria;  // canonical, lexicographic
  bool exhaustive = true;
  std::vector<std::pair<PureProfile, Deviation>> rejected;  // filled on request
};

struct EnumerationOptions {
  Limits limits;
  bool collect_witnesses = false;
  unsigned threads = 1;
};

/// Brute force over canonical joint profiles. Output order does not depend on threads.
NeReport enumerate_pure_ne(const CoalitionalGame& cg, const EnumerationOptions& options = {});

/// Canonical tuples of a block with pairwise-distinct resources (simple games only).
/// Throws Error(BlockLargerThanResourceSet) when the block outnumbers the resources.
std::vector<BlockTuple> restricted_strategies(const CoalitionalGame& cg, std::size_t block);

/// Brute force over the restricted coalitional game.
NeReport enumerate_pure_ne_restricted(const CoalitionalGame& cg,
                                      const EnumerationOptions& options = {});

/// True when every block's members choose pairwise-distinct resources.
bool has_distinct_block_resources(const CoalitionalGame& cg, const PureProfile& profile);

struct PropositionVerdict {
  bool applicable = false;
  bool holds = false;
};

/// Executable form of "distinct resources within blocks + NE congestion => CCG NE".
/// Throws Error(Proposition1Violated) when applicable but the profile is not an NE.
PropositionVerdict check_proposition1(const CoalitionalGame& cg, const PureProfile& profile);

/// Same statement for the restricted game. Throws Error(PreconditionViolated) when
/// the profile is outside the restricted space and Error(Lemma1Violated) on breach.
PropositionVerdict check_lemma1(const CoalitionalGame& cg, const PureProfile& profile);

}  // namespace ccg
