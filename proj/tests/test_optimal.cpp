#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arena/optimal.hpp"
#include "arena/generators.hpp"
#include "arena/prng.hpp"

using namespace arena;

namespace {

// Brute-force oracle: minimum social cost over the full profile product.
int brute_force_c_star(const Instance& inst) {
  int n = inst.player_count();
  std::vector<std::vector<Path>> strategies;
  for (int i = 0; i < n; ++i) strategies.push_back(inst.strategy_paths(i));
  std::vector<std::size_t> index(n, 0);
  int best = inst.player_count();
  for (;;) {
    Routing r;
    for (int i = 0; i < n; ++i) r.choice.push_back(strategies[i][index[i]]);
    best = std::min(best, social_cost(inst, r));
    int pos = n - 1;
    while (pos >= 0) {
      if (++index[pos] < strategies[pos].size()) break;
      index[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return best;
}

}  // namespace

TEST_CASE("feasible_with_cap on parallel links") {
  Instance inst = gen_parallel_links(5, 2, CostModel::exp_sum());
  auto r3 = feasible_with_cap(inst, 3);
  REQUIRE(r3.has_value());
  CongestionMap counts = congestion(inst, *r3);
  CHECK(std::max(counts[0], counts[1]) <= 3);
  CHECK(counts[0] + counts[1] == 5);
  CHECK_FALSE(feasible_with_cap(inst, 2).has_value());  // 5 > 2*2
  CHECK_THROWS_AS(feasible_with_cap(inst, 0), Error);
}

TEST_CASE("cap 1 spreads the counterexample players") {
  Instance cx = gen_linear_counterexample(4, CostModel::exp_sum());
  auto r = feasible_with_cap(cx, 1);
  REQUIRE(r.has_value());
  for (int c : congestion(cx, *r)) CHECK(c <= 1);
}

TEST_CASE("search budget error surfaces") {
  Instance cx = gen_linear_counterexample(5, CostModel::exp_sum());
  CHECK_THROWS_AS(feasible_with_cap(cx, 1, 2), Error);
}

TEST_CASE("min_bottleneck_routing basics") {
  Instance cx = gen_linear_counterexample(5, CostModel::exp_sum());
  OptimalResult opt = min_bottleneck_routing(cx);
  CHECK(opt.c_star == 1);
  CHECK(social_cost(cx, opt.witness) == 1);
  CHECK(opt.l_star == 5);  // someone must take a long route

  Instance links = gen_parallel_links(5, 2, CostModel::exp_sum());
  OptimalResult lopt = min_bottleneck_routing(links);
  CHECK(lopt.c_star == 3);  // ceil(5/2)
  CHECK(lopt.l_star == 1);

  Instance one = gen_parallel_links(1, 3, CostModel::exp_sum());
  OptimalResult sopt = min_bottleneck_routing(one);
  CHECK(sopt.c_star == 1);
  CHECK(sopt.witness.choice[0].edge_seq == std::vector<int>{0});

  Graph g(2, {{0, 0, 1}});
  CHECK_THROWS_AS(min_bottleneck_routing(Instance(g, {}, CostModel::exp_sum())), Error);
}

TEST_CASE("c_star matches the brute-force profile minimum") {
  Prng rng(404);
  for (int trial = 0; trial < 15; ++trial) {
    Prng local = rng.split(trial);
    Instance inst = gen_random_grid(3, 3, 2 + static_cast<int>(local.below(3)),
                                    local.next(), CostModel::exp_sum());
    OptimalResult opt = min_bottleneck_routing(inst);
    CHECK(opt.c_star == brute_force_c_star(inst));
    CHECK(social_cost(inst, opt.witness) == opt.c_star);
  }
  for (int k = 2; k <= 5; ++k) {
    Instance cx = gen_linear_counterexample(k, CostModel::linear_sum());
    CHECK(min_bottleneck_routing(cx).c_star == brute_force_c_star(cx));
  }
}

TEST_CASE("feasibility is monotone in the cap") {
  Prng rng(808);
  for (int trial = 0; trial < 10; ++trial) {
    Prng local = rng.split(trial);
    Instance inst = gen_random_grid(2, 3, 2 + static_cast<int>(local.below(3)),
                                    local.next(), CostModel::exp_sum());
    bool seen_feasible = false;
    for (int cap = 1; cap <= inst.player_count(); ++cap) {
      bool ok = feasible_with_cap(inst, cap).has_value();
      if (seen_feasible) CHECK(ok);
      seen_feasible = seen_feasible || ok;
    }
    CHECK(seen_feasible);
  }
}

TEST_CASE("canonical witness is deterministic") {
  Instance cx = gen_linear_counterexample(4, CostModel::exp_sum());
  OptimalResult a = min_bottleneck_routing(cx);
  OptimalResult b = min_bottleneck_routing(cx);
  CHECK(a.witness == b.witness);
}
