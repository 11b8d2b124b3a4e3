#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "arena/dynamics.hpp"
#include "arena/error.hpp"
#include "arena/game.hpp"
#include "arena/optimal.hpp"

namespace arena {

struct NashEnumeration {
  std::vector<Routing> nash_routings;
  bool truncated = false;
};

// Exhaustive pure-Nash enumeration over the Cartesian product of strategy
// sets, in lexicographic product order. Stops (truncated) once the product
// exceeds profile_cap.
inline NashEnumeration enumerate_nash(const Instance& inst,
                                      std::uint64_t profile_cap = 10000000,
                                      std::size_t enum_cap = 1000000) {
  NashEnumeration out;
  int n = inst.player_count();
  std::vector<std::vector<Path>> strategies;
  strategies.reserve(n);
  for (int i = 0; i < n; ++i) strategies.push_back(inst.strategy_paths(i, enum_cap));
  if (n == 0) return out;

  std::vector<std::size_t> index(n, 0);
  std::uint64_t visited = 0;
  Routing r;
  r.choice.resize(n);
  for (;;) {
    if (visited >= profile_cap) {
      out.truncated = true;
      break;
    }
    ++visited;
    for (int i = 0; i < n; ++i) r.choice[i] = strategies[i][index[i]];
    if (is_nash(inst, r).first) out.nash_routings.push_back(r);

    int pos = n - 1;
    while (pos >= 0) {
      if (++index[pos] < strategies[pos].size()) break;
      index[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

struct EquilibriaReport {
  std::vector<Routing> nash_routings;
  int worst_nash_cost = 0;
  int best_nash_cost = 0;
  int c_star = 0;
  int l_star = 0;
  bool has_nash = false;
  Rational poa = 0;
  Rational pos = 0;
  bool truncated = false;
  double bound_value = 0.0;  // log2(2L) * log2(2|E|)
  double bound_ratio = 0.0;  // poa / bound_value
};

inline EquilibriaReport measure_poa(const Instance& inst,
                                    std::uint64_t profile_cap = 10000000,
                                    std::uint64_t solver_budget = 10000000,
                                    std::size_t enum_cap = 1000000) {
  EquilibriaReport rep;
  NashEnumeration nash = enumerate_nash(inst, profile_cap, enum_cap);
  rep.nash_routings = std::move(nash.nash_routings);
  rep.truncated = nash.truncated;

  OptimalResult opt = min_bottleneck_routing(inst, solver_budget, enum_cap);
  rep.c_star = opt.c_star;
  rep.l_star = opt.l_star;

  rep.has_nash = !rep.nash_routings.empty();
  if (rep.has_nash) {
    rep.worst_nash_cost = 0;
    rep.best_nash_cost = inst.player_count() + 1;
    for (const Routing& r : rep.nash_routings) {
      int sc = social_cost(inst, r);
      rep.worst_nash_cost = std::max(rep.worst_nash_cost, sc);
      rep.best_nash_cost = std::min(rep.best_nash_cost, sc);
    }
    rep.poa = Rational(rep.worst_nash_cost, rep.c_star);
    rep.pos = Rational(rep.best_nash_cost, rep.c_star);
  }

  // Offset inside the logs keeps the bound positive for tiny L or |E|;
  // the asymptotic statement fixes no constant, so the ratio is reported,
  // never asserted.
  int L = inst.max_strategy_length();
  int E = inst.graph().edge_count();
  rep.bound_value = std::log2(2.0 * L) * std::log2(2.0 * E);
  if (rep.has_nash && rep.bound_value > 0)
    rep.bound_ratio = rep.poa.convert_to<double>() / rep.bound_value;
  return rep;
}

}  // namespace arena
