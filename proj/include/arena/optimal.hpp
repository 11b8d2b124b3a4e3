#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "arena/error.hpp"
#include "arena/game.hpp"

namespace arena {

struct OptimalResult {
  int c_star = 0;
  Routing witness;
  int l_star = 0;          // longest path length in the witness
  std::uint64_t nodes_explored = 0;
};

namespace detail {

struct CapSearch {
  const Instance& inst;
  int cap;
  std::uint64_t budget;
  std::uint64_t explored = 0;
  std::vector<std::vector<Path>> strategies;
  CongestionMap counts;
  std::vector<std::optional<Path>> assigned;

  CapSearch(const Instance& instance, int cap_value, std::uint64_t budget_value,
            std::size_t enum_cap)
      : inst(instance), cap(cap_value), budget(budget_value),
        counts(instance.graph().edge_count(), 0),
        assigned(instance.player_count()) {
    strategies.reserve(inst.player_count());
    for (int i = 0; i < inst.player_count(); ++i)
      strategies.push_back(inst.strategy_paths(i, enum_cap));
  }

  bool fits(const Path& p) const {
    for (int id : p.edge_seq)
      if (counts[id] + 1 > cap) return false;
    return true;
  }

  int max_load_after(const Path& p) const {
    int worst = 0;
    for (int id : p.edge_seq) worst = std::max(worst, counts[id] + 1);
    return worst;
  }

  bool solve() {
    if (++explored > budget)
      throw Error(errc::search_budget_exceeded, "feasibility search budget exhausted");
    // Variable order: unassigned player with fewest currently feasible paths.
    int pick = -1;
    std::size_t fewest = 0;
    for (int i = 0; i < inst.player_count(); ++i) {
      if (assigned[i]) continue;
      std::size_t feasible = 0;
      for (const Path& p : strategies[i])
        if (fits(p)) ++feasible;
      if (feasible == 0) return false;
      if (pick < 0 || feasible < fewest) {
        pick = i;
        fewest = feasible;
      }
    }
    if (pick < 0) return true;

    // Value order: smallest resulting max load, then the deterministic
    // path order.
    std::vector<const Path*> options;
    for (const Path& p : strategies[pick])
      if (fits(p)) options.push_back(&p);
    std::stable_sort(options.begin(), options.end(), [&](const Path* a, const Path* b) {
      int la = max_load_after(*a), lb = max_load_after(*b);
      if (la != lb) return la < lb;
      return path_less(*a, *b);
    });

    for (const Path* p : options) {
      assigned[pick] = *p;
      for (int id : p->edge_seq) counts[id] += 1;
      if (solve()) return true;
      for (int id : p->edge_seq) counts[id] -= 1;
      assigned[pick].reset();
    }
    return false;
  }
};

}  // namespace detail

// Decision oracle: a routing with every edge congestion <= cap, or absent.
inline std::optional<Routing> feasible_with_cap(const Instance& inst, int cap,
                                                std::uint64_t budget = 10000000,
                                                std::uint64_t* explored = nullptr,
                                                std::size_t enum_cap = 1000000) {
  if (cap < 1) throw Error(errc::precondition, "cap must be >= 1");
  detail::CapSearch search(inst, cap, budget, enum_cap);
  bool ok = search.solve();
  if (explored) *explored += search.explored;
  if (!ok) return std::nullopt;
  Routing r;
  r.choice.reserve(inst.player_count());
  for (auto& p : search.assigned) r.choice.push_back(*p);
  return r;
}

// Exact coordinated optimum C*: binary search on the cap, certified by the
// failed feasibility check at c_star - 1.
inline OptimalResult min_bottleneck_routing(const Instance& inst,
                                            std::uint64_t budget = 10000000,
                                            std::size_t enum_cap = 1000000) {
  if (inst.player_count() < 1)
    throw Error(errc::precondition, "instance must have at least one player");
  OptimalResult result;
  int lo = 1, hi = inst.player_count();
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (feasible_with_cap(inst, mid, budget, &result.nodes_explored, enum_cap))
      hi = mid;
    else
      lo = mid + 1;
  }
  // Canonical witness: the first routing found by the deterministic search
  // at exactly cap = c_star.
  auto witness = feasible_with_cap(inst, lo, budget, &result.nodes_explored, enum_cap);
  if (!witness)
    throw Error(errc::internal_inconsistency, "cap = N must always be feasible");
  result.c_star = lo;
  result.witness = std::move(*witness);
  for (const Path& p : result.witness.choice)
    result.l_star = std::max(result.l_star, p.length());
  return result;
}

}  // namespace arena
