#include "ccg/random.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ccg {

namespace {

constexpr long kMaxDenominator = 12;

// Non-negative rational p/q with q in [1, 12] and value at most `max_value`.
Rational draw(std::mt19937_64& rng, long max_value) {
  const long q = std::uniform_int_distribution<long>(1, kMaxDenominator)(rng);
  const long p = std::uniform_int_distribution<long>(0, max_value * q)(rng);
  return make_rational(p, q);
}

CostTable draw_table(std::mt19937_64& rng, std::size_t players, CostClass cost_class) {
  CostTable table;
  switch (cost_class) {
    case CostClass::Linear: {
      const Rational slope = draw(rng, 5);
      const Rational intercept = draw(rng, 5);
      for (std::size_t j = 1; j <= players; ++j) table.values.push_back(slope * static_cast<long>(j) + intercept);
      break;
    }
    case CostClass::Convex: {
      Rational value = draw(rng, 5);
      Rational step = draw(rng, 3);
      for (std::size_t j = 1; j <= players; ++j) {
        table.values.push_back(value);
        value += step;
        step += draw(rng, 3);
      }
      break;
    }
    case CostClass::Monotone: {
      Rational value = draw(rng, 5);
      for (std::size_t j = 1; j <= players; ++j) {
        table.values.push_back(value);
        value += draw(rng, 6);
      }
      break;
    }
  }
  return table;
}

}  // namespace

CostClass parse_cost_class(std::string_view name) {
  if (name == "linear") return CostClass::Linear;
  if (name == "convex") return CostClass::Convex;
  if (name == "monotone") return CostClass::Monotone;
  throw Error(ErrorCode::InvalidParams, "unknown cost class '" + std::string(name) + "'");
}

std::string_view to_string(CostClass cost_class) {
  switch (cost_class) {
    case CostClass::Linear: return "linear";
    case CostClass::Convex: return "convex";
    case CostClass::Monotone: return "monotone";
  }
  return "unknown";
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CongestionGame random_game(std::uint64_t seed, std::size_t players, std::size_t resource_count,
                           CostClass cost_class) {
  if (players == 0 || resource_count == 0) {
    throw Error(ErrorCode::InvalidParams, "need at least one sub-agent and one resource");
  }
  if (resource_count > 26) throw Error(ErrorCode::InvalidParams, "at most 26 resources");
  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  std::vector<CostTable> costs;
  for (std::size_t r = 0; r < resource_count; ++r) {
    names.emplace_back(1, static_cast<char>('A' + r));
    costs.push_back(draw_table(rng, players, cost_class));
  }
  return CongestionGame::simple(std::move(names), std::move(costs), players);
}

Partition random_partition(std::uint64_t seed, std::size_t players, std::size_t max_block,
                           bool theorem2_shape) {
  if (players == 0 || max_block == 0 || max_block > players) {
    throw Error(ErrorCode::InvalidParams, "need 1 <= max_block <= players");
  }
  if (theorem2_shape && (players < 3 || max_block < 2)) {
    throw Error(ErrorCode::InvalidParams, "a pair and a singleton need players >= 3 and max_block >= 2");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(players);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<std::size_t>> blocks;
  std::size_t next = 0;
  auto take = [&](std::size_t size) {
    blocks.emplace_back(order.begin() + static_cast<long>(next), order.begin() + static_cast<long>(next + size));
    next += size;
  };
  if (theorem2_shape) {
    take(2);
    take(1);
  }
  while (next < players) {
    const std::size_t cap = std::min(max_block, players - next);
    take(std::uniform_int_distribution<std::size_t>(1, cap)(rng));
  }
  return Partition(std::move(blocks), players);
}

}  // namespace ccg
