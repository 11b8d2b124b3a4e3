#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arena/bigint.hpp"
#include "arena/error.hpp"
#include "arena/graph.hpp"

namespace arena {

struct CostModel {
  enum class Variant { BottleneckMax, ExpSum, LogExpSum, LinearSum, PolySum };
  Variant variant = Variant::ExpSum;
  int degree = 1;  // PolySum only; PolySum(1) coincides with LinearSum

  static CostModel bottleneck() { return {Variant::BottleneckMax, 1}; }
  static CostModel exp_sum() { return {Variant::ExpSum, 1}; }
  static CostModel log_exp_sum() { return {Variant::LogExpSum, 1}; }
  static CostModel linear_sum() { return {Variant::LinearSum, 1}; }
  static CostModel poly_sum(int d) { return {Variant::PolySum, d}; }

  bool additive() const { return variant != Variant::BottleneckMax; }

  friend bool operator==(const CostModel& a, const CostModel& b) {
    if (a.variant != b.variant) return false;
    return a.variant != Variant::PolySum || a.degree == b.degree;
  }
};

inline std::string cost_model_name(const CostModel& m) {
  switch (m.variant) {
    case CostModel::Variant::BottleneckMax: return "bottleneck";
    case CostModel::Variant::ExpSum: return "expsum";
    case CostModel::Variant::LogExpSum: return "logexpsum";
    case CostModel::Variant::LinearSum: return "linear";
    case CostModel::Variant::PolySum: return "poly" + std::to_string(m.degree);
  }
  return "?";
}

struct ExplicitPaths {
  std::vector<Path> paths;
};

struct AllPaths {
  int max_len;
};

using StrategySet = std::variant<ExplicitPaths, AllPaths>;

struct Player {
  int id;
  int source;
  int destination;
  StrategySet strategies;
};

// Player cost with exact ordering. For LogExpSum the key is the underlying
// exponential-sum integer (ordering never rounds); display() reports log2.
struct Cost {
  BigInt key;
  bool log_scale = false;

  double display() const { return log_scale ? log2_value(key) : key.convert_to<double>(); }

  friend bool operator==(const Cost& a, const Cost& b) { return a.key == b.key; }
  friend bool operator<(const Cost& a, const Cost& b) { return a.key < b.key; }
  friend bool operator<=(const Cost& a, const Cost& b) { return a.key <= b.key; }
};

using CongestionMap = std::vector<int>;  // edge id -> count

class Instance {
 public:
  Instance(Graph graph, std::vector<Player> players, CostModel model)
      : graph_(std::move(graph)), players_(std::move(players)), model_(model) {
    if (model_.variant == CostModel::Variant::PolySum && model_.degree < 1)
      throw Error(errc::invalid_instance, "PolySum degree must be >= 1");
    for (std::size_t i = 0; i < players_.size(); ++i) {
      const Player& pl = players_[i];
      if (pl.id != static_cast<int>(i))
        throw Error(errc::invalid_instance, "player ids must be dense in [0,N)");
      if (pl.source == pl.destination)
        throw Error(errc::invalid_instance, "player source must differ from destination");
      if (pl.source < 0 || pl.source >= graph_.node_count() || pl.destination < 0 ||
          pl.destination >= graph_.node_count())
        throw Error(errc::invalid_instance, "player endpoint out of range");
      if (const auto* ex = std::get_if<ExplicitPaths>(&pl.strategies)) {
        if (ex->paths.empty())
          throw Error(errc::invalid_instance, "explicit strategy set must be nonempty");
        for (const Path& p : ex->paths) {
          if (p.source != pl.source || p.destination != pl.destination ||
              !validate_path(graph_, p) || p.edge_seq.empty())
            throw Error(errc::invalid_instance, "strategy path violates path invariants");
        }
      } else {
        const auto& ap = std::get<AllPaths>(pl.strategies);
        if (ap.max_len < 1)
          throw Error(errc::invalid_instance, "all_paths max_len must be >= 1");
        // At least one path within max_len must exist.
        std::vector<BigInt> unit(graph_.edge_count(), 1);
        if (!detail::min_weight_path_impl(graph_, pl.source, pl.destination, unit, ap.max_len))
          throw Error(errc::invalid_instance, "no strategy path within max_len");
      }
    }
  }

  const Graph& graph() const { return graph_; }
  const std::vector<Player>& players() const { return players_; }
  const Player& player(int i) const { return players_[i]; }
  int player_count() const { return static_cast<int>(players_.size()); }
  const CostModel& cost_model() const { return model_; }

  // L: maximum path length over all strategy sets (AllPaths contributes max_len).
  int max_strategy_length() const {
    int L = 0;
    for (const Player& pl : players_) {
      if (const auto* ex = std::get_if<ExplicitPaths>(&pl.strategies)) {
        for (const Path& p : ex->paths) L = std::max(L, p.length());
      } else {
        L = std::max(L, std::get<AllPaths>(pl.strategies).max_len);
      }
    }
    return L;
  }

  bool strategy_allows(int i, const Path& p) const {
    const Player& pl = players_[i];
    if (const auto* ex = std::get_if<ExplicitPaths>(&pl.strategies)) {
      for (const Path& q : ex->paths)
        if (q == p) return true;
      return false;
    }
    const auto& ap = std::get<AllPaths>(pl.strategies);
    return p.source == pl.source && p.destination == pl.destination &&
           !p.edge_seq.empty() && p.length() <= ap.max_len && validate_path(graph_, p);
  }

  // Materialized strategy set, deterministic order.
  std::vector<Path> strategy_paths(int i, std::size_t cap = 1000000) const {
    const Player& pl = players_[i];
    if (const auto* ex = std::get_if<ExplicitPaths>(&pl.strategies)) return ex->paths;
    const auto& ap = std::get<AllPaths>(pl.strategies);
    return all_simple_paths(graph_, pl.source, pl.destination, ap.max_len, cap);
  }

 private:
  Graph graph_;
  std::vector<Player> players_;
  CostModel model_;
};

struct Routing {
  std::vector<Path> choice;  // indexed by player id

  friend bool operator==(const Routing& a, const Routing& b) { return a.choice == b.choice; }
};

inline void require_valid_routing(const Instance& inst, const Routing& r) {
  if (static_cast<int>(r.choice.size()) != inst.player_count())
    throw Error(errc::invalid_routing, "routing must choose one path per player");
  for (int i = 0; i < inst.player_count(); ++i)
    if (!inst.strategy_allows(i, r.choice[i]))
      throw Error(errc::invalid_routing,
                  "player " + std::to_string(i) + " path not in strategy set");
}

inline CongestionMap congestion(const Instance& inst, const Routing& r) {
  require_valid_routing(inst, r);
  CongestionMap counts(inst.graph().edge_count(), 0);
  for (const Path& p : r.choice)
    for (int id : p.edge_seq) counts[id] += 1;
  return counts;
}

// Congestion with player i's path removed.
inline CongestionMap congestion_without(const Instance& inst, const Routing& r, int i) {
  CongestionMap counts = congestion(inst, r);
  for (int id : r.choice[i].edge_seq) counts[id] -= 1;
  return counts;
}

// Cost of traversing `edges` under `counts`, per the model. The caller is
// responsible for the counts already including the traversing player.
inline Cost path_cost(const CostModel& model, const CongestionMap& counts,
                      const std::vector<int>& edges) {
  switch (model.variant) {
    case CostModel::Variant::BottleneckMax: {
      int worst = 0;
      for (int id : edges) worst = std::max(worst, counts[id]);
      return Cost{worst, false};
    }
    case CostModel::Variant::ExpSum:
    case CostModel::Variant::LogExpSum: {
      BigInt sum = 0;
      for (int id : edges) sum += pow2(static_cast<std::uint64_t>(counts[id]));
      return Cost{sum, model.variant == CostModel::Variant::LogExpSum};
    }
    case CostModel::Variant::LinearSum: {
      BigInt sum = 0;
      for (int id : edges) sum += counts[id];
      return Cost{sum, false};
    }
    case CostModel::Variant::PolySum: {
      BigInt sum = 0;
      for (int id : edges) sum += boost::multiprecision::pow(BigInt(counts[id]),
                                                             static_cast<unsigned>(model.degree));
      return Cost{sum, false};
    }
  }
  throw Error(errc::internal_inconsistency, "unknown cost model");
}

inline Cost player_cost(const Instance& inst, const Routing& r, int i) {
  if (i < 0 || i >= inst.player_count())
    throw Error(errc::invalid_routing, "player id out of range");
  CongestionMap counts = congestion(inst, r);
  return path_cost(inst.cost_model(), counts, r.choice[i].edge_seq);
}

// Social cost C: maximum edge congestion.
inline int social_cost(const Instance& inst, const Routing& r) {
  CongestionMap counts = congestion(inst, r);
  int worst = 0;
  for (int c : counts) worst = std::max(worst, c);
  return worst;
}

// Potential f = sum over edges of 2^{C_e}; strictly decreases under greedy
// moves in the exponential model.
inline BigInt potential(const Instance& inst, const Routing& r) {
  CongestionMap counts = congestion(inst, r);
  BigInt sum = 0;
  for (int c : counts) sum += pow2(static_cast<std::uint64_t>(c));
  return sum;
}

}  // namespace arena
