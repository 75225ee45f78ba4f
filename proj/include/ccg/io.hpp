#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ccg/game.hpp"

namespace ccg {

using Json = nlohmann::ordered_json;

/// Contents of a game file: the underlying game and the coalition structure.
struct GameFile {
  CongestionGame game;
  Partition partition;

  friend bool operator==(const GameFile&, const GameFile&) = default;
};

/// Integral values become JSON integers, others "p/q" strings.
Json rational_to_json(const Rational& value);
/// Accepts JSON integers and "p" / "p/q" strings. Throws Error(ParseError).
Rational rational_from_json(const Json& value);

/// Parses the JSON game format:
///   {"resources": [...], "players": n, "costs": {r: [n rationals]},
///    "strategies": "simple" | {"1": [[r, ...], ...], ...},
///    "partition": [[1-based ids], ...]}
/// "partition" may be omitted (discrete partition). Structural problems throw
/// Error(ParseError); semantic checks are left to validate_game.
GameFile parse_game_file(std::string_view text);
GameFile read_game_file(const std::filesystem::path& path);

/// Deterministic emission: keys in format order, blocks and strategies sorted,
/// resources in their stored order.
Json game_file_json(const CongestionGame& game, const Partition& partition);
std::string emit_game_file(const CongestionGame& game, const Partition& partition);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string digest(std::string_view bytes);

/// JSON views of library values shared by CLI reports.
Json profile_json(const CoalitionalGame& cg, const PureProfile& profile);
Json congestion_json(const CongestionGame& game, const CongestionVector& c);

}  // namespace ccg
