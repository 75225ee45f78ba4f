#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "ccg/game.hpp"

namespace ccg {

enum class CostClass { Linear, Convex, Monotone };

CostClass parse_cost_class(std::string_view name);
std::string_view to_string(CostClass cost_class);

/// Simple game with `resource_count` resources named A, B, ... and random
/// non-negative weakly increasing rational costs (denominators <= 12).
/// Deterministic in the seed. Throws Error(InvalidParams) for zero sizes.
CongestionGame random_game(std::uint64_t seed, std::size_t players, std::size_t resource_count,
                           CostClass cost_class);

/// Random blocks of size <= max_block over shuffled sub-agents. With
/// `theorem2_shape` one pair and one singleton are always present (needs n >= 3
/// and max_block >= 2). Throws Error(InvalidParams) otherwise.
Partition random_partition(std::uint64_t seed, std::size_t players, std::size_t max_block,
                           bool theorem2_shape = false);

/// Derives independent per-trial seeds from one experiment seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ccg
