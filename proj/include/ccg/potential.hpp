#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ccg/game.hpp"
#include "ccg/strategic_form.hpp"

namespace ccg {

/// Candidate exact potential: one value per joint profile index.
struct PotentialTable {
  std::vector<Rational> values;

  friend bool operator==(const PotentialTable&, const PotentialTable&) = default;
};

/// A unilateral deviation where potential and utility differences disagree.
struct PotentialViolation {
  std::size_t player = 0;
  std::uint64_t profile = 0;
  std::size_t alternative = 0;
  Rational potential_difference;  // P(s) - P(s_-i, t_i)
  Rational utility_difference;    // U_i(s) - U_i(s_-i, t_i)
};

struct PotentialCheck {
  bool ok = true;
  std::optional<PotentialViolation> first_violation;  // lexicographic (profile, player, alternative)

  explicit operator bool() const { return ok; }
};

/// Two-player deviation square with a nonzero signed utility sum.
struct FourCycleWitness {
  std::size_t player_i = 0;
  std::size_t player_j = 0;
  std::vector<std::size_t> base;  // s
  std::size_t t_i = 0;
  std::size_t t_j = 0;
  Rational residual;

  /// The four profiles visited: s, (t_i, s_-i), (t_i, t_j, s_-ij), (t_j, s_-j).
  std::array<std::vector<std::size_t>, 4> cycle() const;
};

struct PotentialVerdict {
  std::variant<PotentialTable, FourCycleWitness> outcome;

  bool has_potential() const { return std::holds_alternative<PotentialTable>(outcome); }
  const PotentialTable& table() const { return std::get<PotentialTable>(outcome); }
  const FourCycleWitness& witness() const { return std::get<FourCycleWitness>(outcome); }
};

/// Path integration from the all-first-strategies profile (anchored at 0): players
/// switch to their target strategies one at a time in index order, each step adding
/// the mover's utility change. Always returns a candidate; verification decides.
PotentialTable build_potential_by_path(const StrategicForm& game, const Limits& limits = {});

/// Exact check of P(s) - P(s_-i, t_i) = U_i(s) - U_i(s_-i, t_i) everywhere.
PotentialCheck verify_exact_potential(const StrategicForm& game, const PotentialTable& table,
                                      unsigned threads = 1);

/// [U_i(s) - U_i(t_i,s_-i)] + [U_j(t_i,s_-i) - U_j(t_i,t_j,s_-ij)]
///   + [U_i(t_i,t_j,s_-ij) - U_i(t_j,s_-j)] + [U_j(t_j,s_-j) - U_j(s)].
/// Throws Error(InvalidIndices) for i == j or out-of-range indices.
Rational four_cycle_residual(const StrategicForm& game, std::size_t i, std::size_t j,
                             std::span<const std::size_t> base, std::size_t t_i, std::size_t t_j);

/// Sound and complete decision for finite games: the path-built table when it
/// verifies, otherwise a four-cycle with nonzero residual.
PotentialVerdict exact_potential(const StrategicForm& game, const Limits& limits = {},
                                 unsigned threads = 1);

struct LinearityEntry {
  bool linear = false;
  std::optional<Rational> slope;
  std::optional<Rational> intercept;
  std::optional<std::size_t> first_violation;  // occupancy j where P(j+1) - 2P(j) + P(j-1) != 0
};

/// Affine test P(j) = slope * j + intercept via vanishing second differences.
LinearityEntry is_linear(const CostTable& table);

struct Theorem2Verdict {
  bool applicable = false;
  bool all_linear = false;
  bool has_potential = false;
  bool consistent = true;
  std::vector<LinearityEntry> linearity;  // per resource
  PotentialVerdict potential;
};

/// Linear costs <=> exact potential, for partitions with a singleton and a pair.
/// Computes both sides; throws Error(Theorem2Violated) if they disagree when applicable.
Theorem2Verdict theorem2_check(const CongestionGame& game, const Partition& partition,
                               const Limits& limits = {});

}  // namespace ccg
