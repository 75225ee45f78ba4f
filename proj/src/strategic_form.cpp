#include "ccg/strategic_form.hpp"

#include <algorithm>

namespace ccg {

StrategicForm::StrategicForm(std::vector<std::vector<std::string>> labels,
                             std::vector<Rational> utilities)
    : labels_(std::move(labels)), strides_(labels_.size(), 1), utilities_(std::move(utilities)) {
  for (std::size_t p = labels_.size(); p-- > 0;) {
    if (labels_[p].empty()) {
      throw Error(ErrorCode::InvalidParams, "player " + std::to_string(p + 1) + " has no strategies");
    }
    strides_[p] = profile_count_;
    profile_count_ *= labels_[p].size();
  }
  if (utilities_.size() != profile_count_ * labels_.size()) {
    throw Error(ErrorCode::InvalidParams, "utility table is not total");
  }
}

std::uint64_t StrategicForm::index(std::span<const std::size_t> profile) const {
  if (profile.size() != players()) throw Error(ErrorCode::InvalidIndices, "profile length");
  std::uint64_t idx = 0;
  for (std::size_t p = 0; p < profile.size(); ++p) {
    if (profile[p] >= labels_[p].size()) {
      throw Error(ErrorCode::InvalidIndices, "strategy index out of range for player " +
                                                 std::to_string(p + 1));
    }
    idx += profile[p] * strides_[p];
  }
  return idx;
}

std::vector<std::size_t> StrategicForm::profile(std::uint64_t index) const {
  std::vector<std::size_t> out(players());
  for (std::size_t p = 0; p < players(); ++p) out[p] = strategy_of(index, p);
  return out;
}

std::uint64_t StrategicForm::deviate(std::uint64_t index, std::size_t player,
                                     std::size_t strategy) const {
  const std::size_t current = strategy_of(index, player);
  return index - current * strides_[player] + strategy * strides_[player];
}

std::uint64_t checked_profile_count(std::span<const std::uint64_t> counts, const Limits& limits,
                                    std::string_view what) {
  std::uint64_t total = 1;
  for (std::uint64_t c : counts) {
    if (c != 0 && total > limits.max_cells / c) {
      throw Error(ErrorCode::SizeLimitExceeded,
                  std::string(what) + " exceeds " + std::to_string(limits.max_cells) + " profiles");
    }
    total *= c;
  }
  return total;
}

std::vector<std::uint64_t> normal_form_pure_ne(const StrategicForm& game) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < game.profile_count(); ++s) {
    bool stable = true;
    for (std::size_t p = 0; p < game.players() && stable; ++p) {
      for (std::size_t t = 0; t < game.strategy_count(p); ++t) {
        if (game.utility(game.deviate(s, p, t), p) > game.utility(s, p)) {
          stable = false;
          break;
        }
      }
    }
    if (stable) out.push_back(s);
  }
  return out;
}

MaterializedGame fix_strategies_subgame(const CoalitionalGame& cg,
                                        const std::vector<std::optional<std::size_t>>& fixed,
                                        std::span<const std::size_t> free_blocks,
                                        const Limits& limits) {
  const auto& base = cg.base();
  std::vector<bool> is_free(cg.block_count(), false);
  for (std::size_t k : free_blocks) {
    if (k >= cg.block_count() || is_free[k]) {
      throw Error(ErrorCode::CoverageMismatch, "free blocks must be distinct valid block indices");
    }
    is_free[k] = true;
  }
  if (!fixed.empty() && fixed.size() != base.players()) {
    throw Error(ErrorCode::CoverageMismatch, "fixed profile length differs from sub-agent count");
  }
  for (std::size_t i = 0; i < base.players(); ++i) {
    const bool frozen = !fixed.empty() && fixed[i].has_value();
    if (frozen == is_free[cg.partition().block_of(i)]) {
      throw Error(ErrorCode::CoverageMismatch,
                  "sub-agent " + std::to_string(i + 1) +
                      (frozen ? " is frozen but belongs to a free block" : " is neither frozen nor free"));
    }
    if (frozen && *fixed[i] >= base.strategies(i).size()) {
      throw Error(ErrorCode::InvalidProfile, "frozen strategy out of range for sub-agent " +
                                                 std::to_string(i + 1));
    }
  }

  MaterializedGame out{StrategicForm({}, {}),
                       {free_blocks.begin(), free_blocks.end()},
                       {}};
  std::vector<std::uint64_t> counts;
  for (std::size_t k : free_blocks) counts.push_back(canonical_block_strategy_count(cg, k));
  const std::uint64_t cells = checked_profile_count(counts, limits, "materialized game");

  std::vector<std::vector<std::string>> labels;
  for (std::size_t k : free_blocks) {
    out.block_strategies.push_back(canonical_block_strategies(cg, k));
    auto& names = labels.emplace_back();
    for (const auto& tuple : out.block_strategies.back()) names.push_back(block_tuple_label(cg, k, tuple));
  }

  const std::size_t players = free_blocks.size();
  std::vector<Rational> utilities(cells * players);
  PureProfile profile{std::vector<std::size_t>(base.players(), 0)};
  for (std::size_t i = 0; i < base.players(); ++i) {
    if (!fixed.empty() && fixed[i]) profile.choices[i] = *fixed[i];
  }
  std::vector<std::size_t> joint(players, 0);
  std::vector<int> load(base.resource_count());
  for (std::uint64_t cell = 0; cell < cells; ++cell) {
    for (std::size_t p = 0; p < players; ++p) {
      assign_block(cg, profile, free_blocks[p], out.block_strategies[p][joint[p]]);
    }
    std::fill(load.begin(), load.end(), 0);
    for (std::size_t i = 0; i < base.players(); ++i) {
      for (ResourceId r : base.strategy(i, profile.choices[i])) ++load[r];
    }
    for (std::size_t p = 0; p < players; ++p) {
      Rational& u = utilities[cell * players + p];
      for (std::size_t i : cg.partition().block(free_blocks[p])) {
        for (ResourceId r : base.strategy(i, profile.choices[i])) {
          u -= base.cost(r).at(static_cast<std::size_t>(load[r]));
        }
      }
    }
    for (std::size_t p = players; p-- > 0;) {
      if (++joint[p] < out.block_strategies[p].size()) break;
      joint[p] = 0;
    }
  }
  out.form = StrategicForm(std::move(labels), std::move(utilities));
  return out;
}

MaterializedGame materialize(const CoalitionalGame& cg, const Limits& limits) {
  std::vector<std::size_t> all(cg.block_count());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return fix_strategies_subgame(cg, {}, all, limits);
}

PureProfile expand_profile(const CoalitionalGame& cg, const MaterializedGame& game,
                           std::uint64_t index,
                           const std::vector<std::optional<std::size_t>>& fixed) {
  PureProfile profile{std::vector<std::size_t>(cg.base().players(), 0)};
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (fixed[i]) profile.choices[i] = *fixed[i];
  }
  for (std::size_t p = 0; p < game.blocks.size(); ++p) {
    assign_block(cg, profile, game.blocks[p],
                 game.block_strategies[p][game.form.strategy_of(index, p)]);
  }
  return profile;
}

}  // namespace ccg
