#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/error.hpp"
#include "arena/game.hpp"

namespace arena {

using Json = nlohmann::json;  // std::map-backed objects: keys serialize sorted

inline constexpr int kFormatVersion = 1;

// FNV-1a 64 over the canonical bytes; stable across platforms.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

namespace detail {

inline void reject_unknown_keys(const Json& obj, const std::vector<std::string>& allowed,
                                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const auto& k : allowed)
      if (it.key() == k) known = true;
    if (!known)
      throw Error(errc::parse_error,
                  "unknown key '" + it.key() + "' in " + where + " (format version " +
                      std::to_string(kFormatVersion) + ")");
  }
}

inline void check_format_version(const Json& doc, const std::string& what) {
  if (!doc.is_object() || !doc.contains("format_version"))
    throw Error(errc::parse_error, what + " is missing format_version");
  if (!doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != kFormatVersion)
    throw Error(errc::format_version,
                what + " format_version must be " + std::to_string(kFormatVersion));
}

}  // namespace detail

inline Json instance_to_json(const Instance& inst) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["graph"]["nodes"] = inst.graph().node_count();
  Json edges = Json::array();
  for (const Edge& e : inst.graph().edges()) edges.push_back({e.id, e.u, e.v});
  doc["graph"]["edges"] = edges;
  Json players = Json::array();
  for (const Player& pl : inst.players()) {
    Json jp;
    jp["id"] = pl.id;
    jp["src"] = pl.source;
    jp["dst"] = pl.destination;
    if (const auto* ex = std::get_if<ExplicitPaths>(&pl.strategies)) {
      Json paths = Json::array();
      for (const Path& p : ex->paths) paths.push_back(p.edge_seq);
      jp["strategies"] = paths;
    } else {
      jp["strategies"] = Json{{"all_paths", std::get<AllPaths>(pl.strategies).max_len}};
    }
    players.push_back(jp);
  }
  doc["players"] = players;
  Json cm;
  switch (inst.cost_model().variant) {
    case CostModel::Variant::BottleneckMax: cm["variant"] = "bottleneck"; break;
    case CostModel::Variant::ExpSum: cm["variant"] = "expsum"; break;
    case CostModel::Variant::LogExpSum: cm["variant"] = "logexpsum"; break;
    case CostModel::Variant::LinearSum: cm["variant"] = "linear"; break;
    case CostModel::Variant::PolySum:
      cm["variant"] = "poly";
      cm["degree"] = inst.cost_model().degree;
      break;
  }
  doc["cost_model"] = cm;
  return doc;
}

// Canonical text: sorted keys, two-space indent, trailing newline. Digests
// are taken over exactly these bytes.
inline std::string serialize_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

inline CostModel cost_model_from_json(const Json& cm) {
  if (!cm.is_object()) throw Error(errc::parse_error, "cost_model must be an object");
  detail::reject_unknown_keys(cm, {"variant", "degree"}, "cost_model");
  if (!cm.contains("variant") || !cm["variant"].is_string())
    throw Error(errc::parse_error, "cost_model.variant must be a string");
  std::string v = cm["variant"].get<std::string>();
  if (v != "poly" && cm.contains("degree"))
    throw Error(errc::parse_error, "cost_model.degree only applies to poly");
  if (v == "bottleneck") return CostModel::bottleneck();
  if (v == "expsum") return CostModel::exp_sum();
  if (v == "logexpsum") return CostModel::log_exp_sum();
  if (v == "linear") return CostModel::linear_sum();
  if (v == "poly") {
    if (!cm.contains("degree") || !cm["degree"].is_number_integer() ||
        cm["degree"].get<int>() < 1)
      throw Error(errc::parse_error, "poly cost model needs integer degree >= 1");
    return CostModel::poly_sum(cm["degree"].get<int>());
  }
  throw Error(errc::parse_error, "unknown cost model variant '" + v + "'");
}

inline Instance parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(errc::parse_error, std::string("instance file: ") + e.what());
  }
  detail::check_format_version(doc, "instance file");
  detail::reject_unknown_keys(doc, {"format_version", "graph", "players", "cost_model"},
                              "instance file");
  if (!doc.contains("graph") || !doc.contains("players") || !doc.contains("cost_model"))
    throw Error(errc::parse_error, "instance file needs graph, players and cost_model");

  const Json& jg = doc["graph"];
  detail::reject_unknown_keys(jg, {"nodes", "edges"}, "graph");
  if (!jg.contains("nodes") || !jg["nodes"].is_number_integer() ||
      !jg.contains("edges") || !jg["edges"].is_array())
    throw Error(errc::parse_error, "graph needs integer nodes and edge list");
  std::vector<Edge> edges;
  for (const Json& je : jg["edges"]) {
    if (!je.is_array() || je.size() != 3)
      throw Error(errc::parse_error, "each edge must be [id, u, v]");
    edges.push_back(Edge{je[0].get<int>(), je[1].get<int>(), je[2].get<int>()});
  }

  std::vector<Player> players;
  if (!doc["players"].is_array())
    throw Error(errc::parse_error, "players must be an array");
  for (const Json& jp : doc["players"]) {
    detail::reject_unknown_keys(jp, {"id", "src", "dst", "strategies"}, "player");
    for (const char* key : {"id", "src", "dst"})
      if (!jp.contains(key) || !jp[key].is_number_integer())
        throw Error(errc::parse_error, std::string("player needs integer ") + key);
    if (!jp.contains("strategies"))
      throw Error(errc::parse_error, "player needs strategies");
    Player pl;
    pl.id = jp["id"].get<int>();
    pl.source = jp["src"].get<int>();
    pl.destination = jp["dst"].get<int>();
    const Json& js = jp["strategies"];
    if (js.is_array()) {
      ExplicitPaths ex;
      for (const Json& seq : js) {
        if (!seq.is_array())
          throw Error(errc::parse_error, "each strategy must be a list of edge ids");
        Path p;
        p.source = pl.source;
        p.destination = pl.destination;
        for (const Json& id : seq) p.edge_seq.push_back(id.get<int>());
        ex.paths.push_back(std::move(p));
      }
      pl.strategies = std::move(ex);
    } else if (js.is_object()) {
      detail::reject_unknown_keys(js, {"all_paths"}, "strategies");
      if (!js.contains("all_paths") || !js["all_paths"].is_number_integer())
        throw Error(errc::parse_error, "strategies object needs integer all_paths");
      pl.strategies = AllPaths{js["all_paths"].get<int>()};
    } else {
      throw Error(errc::parse_error, "strategies must be a path list or {all_paths: L}");
    }
    players.push_back(std::move(pl));
  }

  try {
    Graph g(jg["nodes"].get<int>(), std::move(edges));
    return Instance(std::move(g), std::move(players), cost_model_from_json(doc["cost_model"]));
  } catch (const Error& e) {
    if (e.code() == errc::invalid_graph || e.code() == errc::invalid_instance)
      throw Error(e.code(), std::string("instance file: ") + e.what());
    throw;
  }
}

inline Json routing_to_json(const Routing& r) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  Json choices = Json::array();
  for (const Path& p : r.choice) choices.push_back(p.edge_seq);
  doc["choices"] = choices;
  return doc;
}

inline std::string serialize_routing(const Routing& r) {
  return routing_to_json(r).dump(2) + "\n";
}

// The routing file stores edge sequences only; endpoints come from the
// instance's players.
inline Routing parse_routing(const std::string& text, const Instance& inst) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(errc::parse_error, std::string("routing file: ") + e.what());
  }
  detail::check_format_version(doc, "routing file");
  detail::reject_unknown_keys(doc, {"format_version", "choices"}, "routing file");
  if (!doc.contains("choices") || !doc["choices"].is_array())
    throw Error(errc::parse_error, "routing file needs a choices array");
  if (static_cast<int>(doc["choices"].size()) != inst.player_count())
    throw Error(errc::invalid_routing, "routing must list one path per player");
  Routing r;
  for (int i = 0; i < inst.player_count(); ++i) {
    Path p;
    p.source = inst.player(i).source;
    p.destination = inst.player(i).destination;
    for (const Json& id : doc["choices"][i]) p.edge_seq.push_back(id.get<int>());
    r.choice.push_back(std::move(p));
  }
  require_valid_routing(inst, r);
  return r;
}

}  // namespace arena
