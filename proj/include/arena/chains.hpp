#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "arena/bigint.hpp"
#include "arena/error.hpp"
#include "arena/game.hpp"

namespace arena {

using PlayerSet = std::set<int>;

namespace detail {

// Cost player i pays in the reduced routing q_i: only players of `present`
// exist, all on their nash paths, except i which sits on its optimal path.
// The deviating player's own contribution on the optimal path is counted.
inline Cost reduced_cost(const Instance& inst, const Routing& nash, const Routing& opt,
                         const PlayerSet& present, int i) {
  CongestionMap counts(inst.graph().edge_count(), 0);
  for (int j : present) {
    const Path& p = (j == i) ? opt.choice[j] : nash.choice[j];
    for (int id : p.edge_seq) counts[id] += 1;
  }
  return path_cost(inst.cost_model(), counts, opt.choice[i].edge_seq);
}

}  // namespace detail

struct SelfSufficiency {
  bool self_sufficient = false;
  std::vector<int> violators;  // players whose reduced cost beats their nash cost
};

// A set S is self-sufficient in `nash` when every member is deterred from
// its optimal path by congestion caused inside S alone.
inline SelfSufficiency is_self_sufficient(const Instance& inst, const Routing& nash,
                                          const Routing& opt, const PlayerSet& s) {
  require_valid_routing(inst, nash);
  require_valid_routing(inst, opt);
  if (s.empty()) throw Error(errc::precondition, "player set must be nonempty");
  SelfSufficiency out;
  for (int i : s) {
    if (i < 0 || i >= inst.player_count())
      throw Error(errc::precondition, "player id out of range");
    Cost reduced = detail::reduced_cost(inst, nash, opt, s, i);
    Cost staying = player_cost(inst, nash, i);
    if (reduced < staying) out.violators.push_back(i);
  }
  out.self_sufficient = out.violators.empty();
  return out;
}

enum class SupportMode { Greedy, ExactMinimal };

// A support set S' disjoint from S whose presence (on nash paths) restores
// the self-sufficiency inequalities for every member of S.
inline PlayerSet find_support_set(const Instance& inst, const Routing& nash,
                                  const Routing& opt, const PlayerSet& s,
                                  SupportMode mode = SupportMode::Greedy,
                                  std::uint64_t budget = 1000000) {
  SelfSufficiency base = is_self_sufficient(inst, nash, opt, s);
  if (base.self_sufficient)
    throw Error(errc::precondition, "set is already self-sufficient");

  auto holds_with = [&](const PlayerSet& extra) {
    PlayerSet present = s;
    present.insert(extra.begin(), extra.end());
    for (int i : s)
      if (detail::reduced_cost(inst, nash, opt, present, i) < player_cost(inst, nash, i))
        return false;
    return true;
  };

  // Only players whose nash paths touch some violator's optimal-path edges
  // can change any of the compared costs.
  std::set<int> relevant_edges;
  for (int i : base.violators)
    for (int id : opt.choice[i].edge_seq) relevant_edges.insert(id);
  std::vector<int> pool;
  for (int j = 0; j < inst.player_count(); ++j) {
    if (s.count(j)) continue;
    for (int id : nash.choice[j].edge_seq)
      if (relevant_edges.count(id)) {
        pool.push_back(j);
        break;
      }
  }

  if (mode == SupportMode::ExactMinimal) {
    std::uint64_t examined = 0;
    // Subsets by increasing cardinality, lexicographic within a size.
    std::size_t n = pool.size();
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<std::size_t> idx(k);
      for (std::size_t i = 0; i < k; ++i) idx[i] = i;
      for (;;) {
        if (++examined > budget)
          throw Error(errc::search_budget_exceeded, "support-set subset search exhausted");
        PlayerSet cand;
        for (std::size_t i : idx) cand.insert(pool[i]);
        if (holds_with(cand)) return cand;
        // next combination
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
    throw Error(errc::no_support_set,
                "no support subset restores self-sufficiency (inconsistent nash input)");
  }

  // Greedy: add the candidate contributing most congestion to the violated
  // optimal-path edges, until every inequality holds.
  PlayerSet support;
  for (;;) {
    PlayerSet present = s;
    present.insert(support.begin(), support.end());
    std::set<int> violated_edges;
    bool all_hold = true;
    for (int i : s) {
      if (detail::reduced_cost(inst, nash, opt, present, i) < player_cost(inst, nash, i)) {
        all_hold = false;
        for (int id : opt.choice[i].edge_seq) violated_edges.insert(id);
      }
    }
    if (all_hold) return support;

    int best = -1;
    int best_overlap = 0;
    for (int j : pool) {
      if (support.count(j)) continue;
      int overlap = 0;
      for (int id : nash.choice[j].edge_seq)
        if (violated_edges.count(id)) ++overlap;
      if (overlap > best_overlap) {
        best = j;
        best_overlap = overlap;
      }
    }
    if (best < 0)
      throw Error(errc::no_support_set,
                  "no remaining player intersects the violated optimal edges "
                  "(inconsistent nash input)");
    support.insert(best);
  }
}

// Stage assignment by cost band. Stage i (1 = highest cost level) holds
// costs in [2^{chat-i}+2, 2^{chat-i+1}]; the band top is honored even for
// the degenerate lowest bands. The value 2^{chat-i}+1 sits between two
// bands and is assigned to the nearer higher-index stage, flagged.
struct StageSlot {
  int stage = 0;  // 0 = below every band
  bool gap_flagged = false;
};

inline StageSlot stage_of_cost(const BigInt& cost, int c_hat) {
  if (cost < 2) return {0, false};
  int i = c_hat - static_cast<int>(ceil_log2(cost)) + 1;
  if (i < 1) return {1, false};  // cost above 2^chat cannot happen for chat from max
  if (i > c_hat) return {0, false};
  BigInt top = pow2(static_cast<std::uint64_t>(c_hat - i + 1));
  BigInt bottom = pow2(static_cast<std::uint64_t>(c_hat - i)) + 2;
  if (cost == top || (cost >= bottom && cost <= top)) return {i, false};
  if (cost == bottom - 1)
    return (i + 1 <= c_hat) ? StageSlot{i + 1, true} : StageSlot{0, true};
  return {0, false};
}

enum class PlayerType { A, B, D, Untyped };

struct PlayerClassification {
  int player_id = 0;
  int stage = 0;
  bool gap_flagged = false;
  PlayerType type = PlayerType::Untyped;
  BigInt exp_cost;
};

struct StageClassification {
  std::vector<PlayerClassification> players;
  int c_hat = 0;
  int l_star = 0;
};

// chat = ceil(log2 max_i exp-cost_i); stage by cost band; type A for a
// single occupied edge of congestion chat-i+1, type B by the max-congestion
// band relative to l_star, type D otherwise.
inline StageClassification classify_stages(const Instance& inst, const Routing& nash,
                                           int l_star) {
  require_valid_routing(inst, nash);
  if (inst.cost_model().variant != CostModel::Variant::ExpSum &&
      inst.cost_model().variant != CostModel::Variant::LogExpSum)
    throw Error(errc::precondition, "stage classification requires the exponential model");
  if (inst.player_count() == 0)
    throw Error(errc::precondition, "instance must have players");

  CongestionMap counts = congestion(inst, nash);
  CostModel exp_model = CostModel::exp_sum();
  std::vector<BigInt> costs(inst.player_count());
  BigInt max_cost = 0;
  for (int i = 0; i < inst.player_count(); ++i) {
    costs[i] = path_cost(exp_model, counts, nash.choice[i].edge_seq).key;
    max_cost = std::max(max_cost, costs[i]);
  }
  StageClassification out;
  out.c_hat = static_cast<int>(ceil_log2(max_cost));
  out.l_star = l_star;

  for (int i = 0; i < inst.player_count(); ++i) {
    PlayerClassification pc;
    pc.player_id = i;
    pc.exp_cost = costs[i];
    StageSlot slot = stage_of_cost(costs[i], out.c_hat);
    pc.stage = slot.stage;
    pc.gap_flagged = slot.gap_flagged;
    if (slot.stage >= 1) {
      int target = out.c_hat - slot.stage + 1;
      int max_congestion = 0;
      for (int id : nash.choice[i].edge_seq)
        max_congestion = std::max(max_congestion, counts[id]);
      if (nash.choice[i].length() == 1 && counts[nash.choice[i].edge_seq[0]] == target) {
        pc.type = PlayerType::A;
      } else if (out.c_hat - slot.stage >= max_congestion &&
                 max_congestion > out.c_hat - slot.stage - l_star - 1) {
        pc.type = PlayerType::B;
      } else {
        pc.type = PlayerType::D;
      }
    }
    out.players.push_back(std::move(pc));
  }
  return out;
}

struct ChainStage {
  int stage_index;        // cost level (1 = highest)
  PlayerSet players;
  BigInt cost_low;        // band bounds for this level
  BigInt cost_high;
  std::set<int> support_edges;  // optimal-path edges of this stage's players
};

struct ChainReport {
  PlayerSet root;
  std::vector<ChainStage> stages;
  int self_sufficient_at = 0;  // index (1-based) of the terminal stage
  int c_hat = 0;
  int l_star = 0;
};

// Grow the root by support sets until self-sufficient, then order the
// accumulated players into stages by decreasing cost level and keep the
// shortest stage prefix whose union is self-sufficient.
inline ChainReport build_expansion_chain(const Instance& inst, const Routing& nash,
                                         const Routing& opt, const PlayerSet& root,
                                         SupportMode mode = SupportMode::Greedy,
                                         std::uint64_t budget = 1000000) {
  if (root.empty()) throw Error(errc::precondition, "root set must be nonempty");
  PlayerSet accumulated = root;
  for (;;) {
    if (is_self_sufficient(inst, nash, opt, accumulated).self_sufficient) break;
    PlayerSet support = find_support_set(inst, nash, opt, accumulated, mode, budget);
    accumulated.insert(support.begin(), support.end());
  }

  ChainReport report;
  report.root = root;
  CongestionMap counts = congestion(inst, nash);
  CostModel exp_model = CostModel::exp_sum();
  BigInt max_cost = 0;
  std::vector<BigInt> costs(inst.player_count());
  for (int i = 0; i < inst.player_count(); ++i) {
    costs[i] = path_cost(exp_model, counts, nash.choice[i].edge_seq).key;
    max_cost = std::max(max_cost, costs[i]);
  }
  report.c_hat = static_cast<int>(ceil_log2(max_cost));
  for (const Path& p : opt.choice) report.l_star = std::max(report.l_star, p.length());

  // Group accumulated players by stage; stage-0 (below-band) players come last.
  std::vector<ChainStage> grouped;
  auto stage_for = [&](int level) -> ChainStage& {
    for (ChainStage& st : grouped)
      if (st.stage_index == level) return st;
    ChainStage st;
    st.stage_index = level;
    if (level >= 1) {
      st.cost_low = pow2(static_cast<std::uint64_t>(report.c_hat - level)) + 2;
      st.cost_high = pow2(static_cast<std::uint64_t>(report.c_hat - level + 1));
    }
    grouped.push_back(std::move(st));
    return grouped.back();
  };
  for (int i : accumulated) {
    StageSlot slot = stage_of_cost(costs[i], report.c_hat);
    ChainStage& st = stage_for(slot.stage);
    st.players.insert(i);
    for (int id : opt.choice[i].edge_seq) st.support_edges.insert(id);
  }
  std::sort(grouped.begin(), grouped.end(), [](const ChainStage& a, const ChainStage& b) {
    if (a.stage_index == 0) return false;  // below-band last
    if (b.stage_index == 0) return true;
    return a.stage_index < b.stage_index;
  });

  // Terminal stage: the first prefix whose union is self-sufficient.
  PlayerSet prefix;
  for (std::size_t j = 0; j < grouped.size(); ++j) {
    prefix.insert(grouped[j].players.begin(), grouped[j].players.end());
    report.stages.push_back(grouped[j]);
    if (is_self_sufficient(inst, nash, opt, prefix).self_sufficient) {
      report.self_sufficient_at = static_cast<int>(j + 1);
      break;
    }
  }
  if (report.self_sufficient_at == 0)
    throw Error(errc::internal_inconsistency,
                "accumulated player set lost self-sufficiency during grouping");
  return report;
}

}  // namespace arena
