#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "arena/error.hpp"
#include "arena/game.hpp"
#include "arena/graph.hpp"
#include "arena/prng.hpp"

namespace arena {

namespace detail {

// Cost player i would pay for using `p` with the rest of the routing fixed;
// the deviating player counts itself on its new path.
inline Cost deviation_cost(const Instance& inst, const CongestionMap& counts_without,
                           const Path& p) {
  CongestionMap counts = counts_without;
  for (int id : p.edge_seq) counts[id] += 1;
  return path_cost(inst.cost_model(), counts, p.edge_seq);
}

// Marginal weight of player i traversing edge e given congestion without i.
inline BigInt marginal_weight(const CostModel& model, int count_without) {
  int c = count_without + 1;
  switch (model.variant) {
    case CostModel::Variant::ExpSum:
    case CostModel::Variant::LogExpSum:
      return pow2(static_cast<std::uint64_t>(c));
    case CostModel::Variant::LinearSum:
      return c;
    case CostModel::Variant::PolySum:
      return boost::multiprecision::pow(BigInt(c), static_cast<unsigned>(model.degree));
    case CostModel::Variant::BottleneckMax:
      break;
  }
  throw Error(errc::internal_inconsistency, "marginal_weight needs an additive model");
}

}  // namespace detail

// Path in player i's strategy set minimizing i's cost with the other players
// fixed. Keeps the current path on ties; otherwise deterministic
// (cost, length, lex) tie-breaking. Explicit sets are scanned exhaustively;
// AllPaths reduces to a single shortest-path query (min-weight for additive
// models, min-bottleneck for BottleneckMax).
inline Path best_response(const Instance& inst, const Routing& r, int i) {
  CongestionMap without = congestion_without(inst, r, i);
  const Path& current = r.choice[i];
  Cost current_cost = detail::deviation_cost(inst, without, current);
  const Player& pl = inst.player(i);

  Path best = current;
  Cost best_cost = current_cost;
  bool improved = false;
  auto consider = [&](const Path& cand) {
    Cost c = detail::deviation_cost(inst, without, cand);
    if (c < best_cost || (improved && c == best_cost && path_less(cand, best))) {
      best = cand;
      best_cost = c;
      improved = true;
    }
  };

  if (const auto* ex = std::get_if<ExplicitPaths>(&pl.strategies)) {
    for (const Path& cand : ex->paths) consider(cand);
    return best;
  }

  const auto& ap = std::get<AllPaths>(pl.strategies);
  Path cand{{}, pl.source, pl.destination};
  if (inst.cost_model().additive()) {
    std::vector<BigInt> w(inst.graph().edge_count());
    for (int e = 0; e < inst.graph().edge_count(); ++e)
      w[e] = detail::marginal_weight(inst.cost_model(), without[e]);
    cand = min_weight_path(inst.graph(), pl.source, pl.destination, w, ap.max_len);
  } else {
    // Minimizing max(C_e^{-i}+1) equals minimizing max C_e^{-i}; the +1
    // reappears in the reported cost via deviation_cost.
    std::vector<std::uint64_t> load(inst.graph().edge_count());
    for (int e = 0; e < inst.graph().edge_count(); ++e)
      load[e] = static_cast<std::uint64_t>(without[e]);
    cand = min_bottleneck_path(inst.graph(), pl.source, pl.destination, load, ap.max_len);
  }
  consider(cand);
  return best;
}

// Nash check. Second element lists every player with a strictly improving
// deviation, paired with its best improving path.
inline std::pair<bool, std::vector<std::pair<int, Path>>> is_nash(const Instance& inst,
                                                                  const Routing& r) {
  require_valid_routing(inst, r);
  std::vector<std::pair<int, Path>> improvers;
  for (int i = 0; i < inst.player_count(); ++i) {
    Path br = best_response(inst, r, i);
    if (br == r.choice[i]) continue;
    CongestionMap without = congestion_without(inst, r, i);
    Cost now = detail::deviation_cost(inst, without, r.choice[i]);
    Cost alt = detail::deviation_cost(inst, without, br);
    if (alt < now) improvers.emplace_back(i, br);
  }
  return {improvers.empty(), improvers};
}

enum class Schedule { RoundRobin, MaxGain, RandomSeeded };

struct BrdStep {
  int step_index;
  int player_id;
  Path old_path;
  Path new_path;
  Cost old_cost;
  Cost new_cost;
  BigInt potential_after;
};

struct BrdTrace {
  std::vector<BrdStep> steps;
  bool converged = false;
  Routing final;
};

// Best-response dynamics: repeated greedy moves until no player can
// strictly improve, or max_steps moves have been made. A player never moves
// on equal cost.
inline BrdTrace run_brd(const Instance& inst, const Routing& start, Schedule schedule,
                        std::uint64_t max_steps, std::uint64_t seed = 0) {
  require_valid_routing(inst, start);
  BrdTrace trace;
  Routing r = start;
  Prng rng(seed);
  int n = inst.player_count();

  auto improving_move = [&](int i) -> std::optional<std::pair<Path, std::pair<Cost, Cost>>> {
    Path br = best_response(inst, r, i);
    if (br == r.choice[i]) return std::nullopt;
    CongestionMap without = congestion_without(inst, r, i);
    Cost now = detail::deviation_cost(inst, without, r.choice[i]);
    Cost alt = detail::deviation_cost(inst, without, br);
    if (!(alt < now)) return std::nullopt;
    return std::make_pair(br, std::make_pair(now, alt));
  };

  std::uint64_t steps = 0;
  int rr_cursor = 0;
  for (;;) {
    int mover = -1;
    std::optional<std::pair<Path, std::pair<Cost, Cost>>> move;

    if (schedule == Schedule::RoundRobin) {
      for (int scan = 0; scan < n; ++scan) {
        int i = (rr_cursor + scan) % n;
        if (auto m = improving_move(i)) {
          mover = i;
          move = m;
          rr_cursor = (i + 1) % n;
          break;
        }
      }
    } else if (schedule == Schedule::MaxGain) {
      BigInt best_potential;
      for (int i = 0; i < n; ++i) {
        auto m = improving_move(i);
        if (!m) continue;
        Routing trial = r;
        trial.choice[i] = m->first;
        BigInt pot = potential(inst, trial);
        if (mover < 0 || pot < best_potential) {
          mover = i;
          move = m;
          best_potential = pot;
        }
      }
    } else {
      std::vector<int> candidates;
      std::vector<std::pair<Path, std::pair<Cost, Cost>>> moves;
      for (int i = 0; i < n; ++i) {
        if (auto m = improving_move(i)) {
          candidates.push_back(i);
          moves.push_back(*m);
        }
      }
      if (!candidates.empty()) {
        std::size_t pick = rng.below(candidates.size());
        mover = candidates[pick];
        move = moves[pick];
      }
    }

    if (mover < 0) {
      trace.converged = true;
      break;
    }
    if (steps >= max_steps) break;

    BrdStep step;
    step.step_index = static_cast<int>(steps);
    step.player_id = mover;
    step.old_path = r.choice[mover];
    step.new_path = move->first;
    step.old_cost = move->second.first;
    step.new_cost = move->second.second;
    r.choice[mover] = move->first;
    step.potential_after = potential(inst, r);
    trace.steps.push_back(std::move(step));
    ++steps;
  }
  trace.final = r;
  return trace;
}

}  // namespace arena
