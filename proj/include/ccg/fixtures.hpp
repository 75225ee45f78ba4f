#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ccg/game.hpp"

namespace ccg {

/// Published payoff cell: one label per block and the printed utility per block.
struct MatrixCellClaim {
  std::vector<std::string> labels;
  std::vector<Rational> printed;
};

struct NeSetClaim {
  bool expect_empty = true;
};

struct PotentialClaim {
  bool expect_exists = false;
  /// Residual 2*a2 - a1 - a3 on the square (AA,A) -> (AB,A) -> (AB,B) -> (AA,B).
  std::optional<Rational> first_cycle_residual;
};

struct Claim {
  std::string citation;
  std::variant<MatrixCellClaim, NeSetClaim, PotentialClaim> body;
};

/// A worked example: game, coalition structure and the claims made about it.
struct Fixture {
  std::string name;
  CongestionGame game;
  Partition partition;
  std::vector<Claim> claims;
};

enum class ClaimStatus { Pass, Fail, Discrepancy };

struct ClaimResult {
  std::string citation;
  std::string description;
  ClaimStatus status = ClaimStatus::Pass;
  std::string detail;
};

/// Two identical resources with costs (0,12,16,18), coalition {1,2,3} and singleton {4}.
Fixture example2();

/// Three identical resources, every sub-agent picks two, P(j) = 6 - 6/j, coalition {1,2} and {3}.
Fixture example3();

/// Two resources with cost triples a and b, coalition {1,2} and {3}.
/// Throws Error(InvalidCosts) unless both triples are non-negative and weakly increasing.
Fixture example4(const Rational& a1, const Rational& a2, const Rational& a3, const Rational& b1,
                 const Rational& b2, const Rational& b3);

/// Recomputes every claim from the raw game. A printed cell that disagrees with the
/// recomputation is a Discrepancy when the printed utility is positive (impossible
/// with non-negative costs) and a Fail otherwise.
std::vector<ClaimResult> check_fixture(const Fixture& fixture, const Limits& limits = {});

std::string_view to_string(ClaimStatus status);

}  // namespace ccg
