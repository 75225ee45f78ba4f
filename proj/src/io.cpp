#include "ccg/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace ccg {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

const Json& require_key(const Json& doc, const char* key) {
  if (!doc.contains(key)) fail(std::string("missing key \"") + key + "\"");
  return doc.at(key);
}

std::size_t to_index(const Json& v, std::size_t upper, const char* what) {
  if (!v.is_number_integer()) fail(std::string(what) + " must be an integer");
  const auto raw = v.get<long long>();
  if (raw < 1 || static_cast<std::size_t>(raw) > upper) {
    fail(std::string(what) + " " + std::to_string(raw) + " out of range 1.." + std::to_string(upper));
  }
  return static_cast<std::size_t>(raw - 1);
}

}  // namespace

Json rational_to_json(const Rational& value) {
  if (value.get_den() == 1 && value.get_num().fits_slong_p()) return Json(value.get_num().get_si());
  return Json(to_string(value));
}

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (value.is_string()) return parse_rational(value.get<std::string>());
  fail("rational must be an integer or a \"p/q\" string, got " + value.dump());
}

GameFile parse_game_file(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(e.what());
  }
  if (!doc.is_object()) fail("game file must be a JSON object");

  const Json& resources_json = require_key(doc, "resources");
  if (!resources_json.is_array() || resources_json.empty()) fail("\"resources\" must be a nonempty array");
  std::vector<std::string> resources;
  std::map<std::string, ResourceId> index_of;
  for (const auto& r : resources_json) {
    if (!r.is_string()) fail("resource ids must be strings");
    if (!index_of.emplace(r.get<std::string>(), resources.size()).second) {
      fail("duplicate resource \"" + r.get<std::string>() + "\"");
    }
    resources.push_back(r.get<std::string>());
  }
  auto resource = [&](const Json& name) {
    if (!name.is_string()) fail("resource ids must be strings");
    auto it = index_of.find(name.get<std::string>());
    if (it == index_of.end()) {
      throw Error(ErrorCode::UnknownResource, "unknown resource \"" + name.get<std::string>() + "\"");
    }
    return it->second;
  };

  const Json& players_json = require_key(doc, "players");
  if (!players_json.is_number_integer() || players_json.get<long long>() < 1) {
    fail("\"players\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(players_json.get<long long>());

  const Json& costs_json = require_key(doc, "costs");
  if (!costs_json.is_object()) fail("\"costs\" must be an object");
  std::vector<CostTable> costs(resources.size());
  std::vector<bool> seen(resources.size(), false);
  for (const auto& [name, values] : costs_json.items()) {
    const ResourceId r = resource(Json(name));
    if (!values.is_array()) fail("cost table of \"" + name + "\" must be an array");
    for (const auto& v : values) costs[r].values.push_back(rational_from_json(v));
    seen[r] = true;
  }
  for (std::size_t r = 0; r < resources.size(); ++r) {
    if (!seen[r]) fail("missing cost table for \"" + resources[r] + "\"");
  }

  const Json& strategies_json = require_key(doc, "strategies");
  std::vector<std::vector<ResourceSet>> strategy_sets;
  if (strategies_json.is_string()) {
    if (strategies_json.get<std::string>() != "simple") fail("\"strategies\" string must be \"simple\"");
    std::vector<ResourceSet> singletons;
    for (std::size_t r = 0; r < resources.size(); ++r) singletons.push_back({r});
    strategy_sets.assign(n, singletons);
  } else if (strategies_json.is_object()) {
    strategy_sets.resize(n);
    std::vector<bool> have(n, false);
    for (const auto& [key, list] : strategies_json.items()) {
      std::size_t id = 0;
      try {
        std::size_t used = 0;
        id = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        fail("strategy key \"" + key + "\" is not a sub-agent id");
      }
      if (id < 1 || id > n) fail("strategy key " + key + " out of range");
      if (!list.is_array()) fail("strategies of sub-agent " + key + " must be an array");
      for (const auto& subset : list) {
        if (!subset.is_array()) fail("each strategy must be an array of resource ids");
        ResourceSet set;
        for (const auto& name : subset) set.push_back(resource(name));
        strategy_sets[id - 1].push_back(std::move(set));
      }
      have[id - 1] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!have[i]) fail("no strategies given for sub-agent " + std::to_string(i + 1));
    }
  } else {
    fail("\"strategies\" must be \"simple\" or an object");
  }

  std::vector<std::vector<std::size_t>> blocks;
  if (doc.contains("partition")) {
    const Json& partition_json = doc.at("partition");
    if (!partition_json.is_array()) fail("\"partition\" must be an array of arrays");
    for (const auto& block : partition_json) {
      if (!block.is_array()) fail("\"partition\" must be an array of arrays");
      auto& b = blocks.emplace_back();
      for (const auto& id : block) b.push_back(to_index(id, n, "sub-agent id"));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
  }

  try {
    return GameFile{CongestionGame(std::move(resources), std::move(costs), std::move(strategy_sets)),
                    Partition(std::move(blocks), n)};
  } catch (const Error& e) {
    fail(e.what());
  }
}

GameFile read_game_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_game_file(buffer.str());
}

Json game_file_json(const CongestionGame& game, const Partition& partition) {
  Json doc;
  doc["resources"] = game.resources();
  doc["players"] = game.players();
  Json costs = Json::object();
  for (std::size_t r = 0; r < game.resource_count(); ++r) {
    Json values = Json::array();
    for (const auto& v : game.cost(r).values) values.push_back(rational_to_json(v));
    costs[game.resource_name(r)] = std::move(values);
  }
  doc["costs"] = std::move(costs);
  if (game.is_simple()) {
    doc["strategies"] = "simple";
  } else {
    Json strategies = Json::object();
    for (std::size_t i = 0; i < game.players(); ++i) {
      Json list = Json::array();
      for (const auto& set : game.strategies(i)) {
        Json names = Json::array();
        for (ResourceId r : set) names.push_back(game.resource_name(r));
        list.push_back(std::move(names));
      }
      strategies[std::to_string(i + 1)] = std::move(list);
    }
    doc["strategies"] = std::move(strategies);
  }
  Json blocks = Json::array();
  for (const auto& block : partition.blocks()) {
    Json ids = Json::array();
    for (std::size_t i : block) ids.push_back(i + 1);
    blocks.push_back(std::move(ids));
  }
  doc["partition"] = std::move(blocks);
  return doc;
}

std::string emit_game_file(const CongestionGame& game, const Partition& partition) {
  return game_file_json(game, partition).dump(2) + "\n";
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

Json profile_json(const CoalitionalGame& cg, const PureProfile& profile) {
  Json blocks = Json::array();
  for (std::size_t k = 0; k < cg.block_count(); ++k) {
    Json tuple = Json::array();
    for (std::size_t i : cg.partition().block(k)) {
      tuple.push_back(cg.base().strategy_label(i, profile.choices.at(i)));
    }
    blocks.push_back(std::move(tuple));
  }
  return blocks;
}

Json congestion_json(const CongestionGame& game, const CongestionVector& c) {
  Json out = Json::object();
  for (std::size_t r = 0; r < game.resource_count(); ++r) out[game.resource_name(r)] = c.counts.at(r);
  return out;
}

}  // namespace ccg
