#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arena/chains.hpp"
#include "arena/dynamics.hpp"
#include "arena/equilibria.hpp"
#include "arena/generators.hpp"
#include "arena/optimal.hpp"

#include <algorithm>

using namespace arena;

namespace {

// The worst (3-on-e) Nash routing of the k=4 expsum counterexample, plus
// the canonical optimal witness.
struct WorstNashFixture {
  Instance inst = gen_linear_counterexample(4, CostModel::exp_sum());
  Routing nash;
  Routing opt;
  int e_on_nash_count = 0;

  WorstNashFixture() {
    NashEnumeration all = enumerate_nash(inst);
    for (const Routing& r : all.nash_routings)
      if (social_cost(inst, r) == 3) {
        nash = r;
        break;
      }
    REQUIRE(!nash.choice.empty());
    opt = min_bottleneck_routing(inst).witness;
    for (const Path& p : nash.choice)
      if (p.edge_seq == std::vector<int>{0}) ++e_on_nash_count;
    REQUIRE(e_on_nash_count == 3);
  }

  PlayerSet players_on_e() const {
    PlayerSet s;
    for (int i = 0; i < 4; ++i)
      if (nash.choice[i].edge_seq == std::vector<int>{0}) s.insert(i);
    return s;
  }

  // The e-player whose optimal path is edge e itself (exactly one player
  // uses e in the optimal spread).
  int e_player_with_opt_e() const {
    for (int i : players_on_e())
      if (opt.choice[i].edge_seq == std::vector<int>{0}) return i;
    return -1;
  }
};

PlayerSet full_set(const Instance& inst) {
  PlayerSet s;
  for (int i = 0; i < inst.player_count(); ++i) s.insert(i);
  return s;
}

}  // namespace

TEST_CASE("the full player set of a Nash routing is self-sufficient") {
  WorstNashFixture fx;
  CHECK(is_self_sufficient(fx.inst, fx.nash, fx.opt, full_set(fx.inst)).self_sufficient);

  // also on every other enumerated Nash routing of this instance
  NashEnumeration all = enumerate_nash(fx.inst);
  for (const Routing& r : all.nash_routings)
    CHECK(is_self_sufficient(fx.inst, r, fx.opt, full_set(fx.inst)).self_sufficient);
}

TEST_CASE("a lone e-player is not self-sufficient when its optimal path is e") {
  WorstNashFixture fx;
  int lone = fx.e_player_with_opt_e();
  REQUIRE(lone >= 0);
  auto res = is_self_sufficient(fx.inst, fx.nash, fx.opt, {lone});
  CHECK_FALSE(res.self_sufficient);
  CHECK(res.violators == std::vector<int>{lone});
}

TEST_CASE("a singleton whose nash and opt paths coincide is self-sufficient") {
  // identity case: alone, deviating to the identical path changes nothing
  Instance inst = gen_parallel_links(1, 2, CostModel::exp_sum());
  Routing nash{{Path{{0}, 0, 1}}};
  CHECK(is_self_sufficient(inst, nash, nash, {0}).self_sufficient);

  // the same holds for any player whose nash path is uncontested: the
  // long-path player of the worst Nash, with its own path taken as optimal
  WorstNashFixture fx;
  for (int i = 0; i < 4; ++i) {
    if (fx.nash.choice[i].length() != 4) continue;
    Routing opt = fx.opt;
    opt.choice[i] = fx.nash.choice[i];
    CHECK(is_self_sufficient(fx.inst, fx.nash, opt, {i}).self_sufficient);
  }
}

TEST_CASE("preconditions") {
  WorstNashFixture fx;
  CHECK_THROWS_AS(is_self_sufficient(fx.inst, fx.nash, fx.opt, {}), Error);
  CHECK_THROWS_AS(
      find_support_set(fx.inst, fx.nash, fx.opt, full_set(fx.inst)), Error);
  CHECK_THROWS_AS(build_expansion_chain(fx.inst, fx.nash, fx.opt, {}), Error);
}

TEST_CASE("support set for a lone e-player is the other e-players") {
  WorstNashFixture fx;
  int lone = fx.e_player_with_opt_e();
  REQUIRE(lone >= 0);
  PlayerSet expected = fx.players_on_e();
  expected.erase(lone);

  for (SupportMode mode : {SupportMode::Greedy, SupportMode::ExactMinimal}) {
    PlayerSet support = find_support_set(fx.inst, fx.nash, fx.opt, {lone}, mode);
    CHECK(support == expected);
    // disjoint from the root, and it restores the inequality
    CHECK(support.count(lone) == 0);
    PlayerSet grown{lone};
    grown.insert(support.begin(), support.end());
    CHECK(is_self_sufficient(fx.inst, fx.nash, fx.opt, grown).self_sufficient);
  }
}

TEST_CASE("no-support-set error on an inconsistent (non-Nash) input") {
  // three players on a two-segment line; the middle player's choices are
  // edge-disjoint from everyone else's optimal paths, so when the supplied
  // routing is not actually a Nash routing no support set can exist
  Graph g(4, {{0, 0, 1}, {1, 0, 1}, {2, 2, 3}, {3, 2, 3}});
  std::vector<Player> players{
      Player{0, 0, 1, ExplicitPaths{{Path{{0}, 0, 1}, Path{{1}, 0, 1}}}},
      Player{1, 0, 1, ExplicitPaths{{Path{{0}, 0, 1}, Path{{1}, 0, 1}}}},
      Player{2, 2, 3, ExplicitPaths{{Path{{2}, 2, 3}, Path{{3}, 2, 3}}}}};
  Instance inst(g, players, CostModel::exp_sum());
  // players 0 and 1 piled on edge 0 (not a Nash: edge 1 is free); claim the
  // optimum splits them; player 2 sits on a different component entirely
  Routing fake_nash{{Path{{0}, 0, 1}, Path{{0}, 0, 1}, Path{{2}, 2, 3}}};
  Routing opt{{Path{{0}, 0, 1}, Path{{1}, 0, 1}, Path{{3}, 2, 3}}};
  // {player 1} is deterred only if someone else occupies edge 1 - nobody can
  auto res = is_self_sufficient(inst, fake_nash, opt, {1});
  REQUIRE_FALSE(res.self_sufficient);
  CHECK_THROWS_AS(find_support_set(inst, fake_nash, opt, {1}, SupportMode::Greedy), Error);
  CHECK_THROWS_AS(find_support_set(inst, fake_nash, opt, {1}, SupportMode::ExactMinimal),
                  Error);
}

TEST_CASE("expansion chain from the full set is a single stage here") {
  WorstNashFixture fx;
  // all four players cost 8 in the worst Nash: one cost level
  ChainReport rep = build_expansion_chain(fx.inst, fx.nash, fx.opt, full_set(fx.inst));
  CHECK(rep.stages.size() == 1);
  CHECK(rep.self_sufficient_at == 1);
  CHECK(rep.c_hat == 3);
}

TEST_CASE("expansion chain invariants from a lone root") {
  WorstNashFixture fx;
  int lone = fx.e_player_with_opt_e();
  REQUIRE(lone >= 0);
  ChainReport rep = build_expansion_chain(fx.inst, fx.nash, fx.opt, {lone});
  REQUIRE(rep.self_sufficient_at == static_cast<int>(rep.stages.size()));

  // stages pairwise disjoint; union self-sufficient; proper prefixes not
  PlayerSet prefix;
  for (std::size_t j = 0; j < rep.stages.size(); ++j) {
    for (int p : rep.stages[j].players) CHECK(prefix.count(p) == 0);
    prefix.insert(rep.stages[j].players.begin(), rep.stages[j].players.end());
    bool ss = is_self_sufficient(fx.inst, fx.nash, fx.opt, prefix).self_sufficient;
    if (j + 1 < rep.stages.size())
      CHECK_FALSE(ss);
    else
      CHECK(ss);
  }
}

TEST_CASE("stage bands") {
  // chat = 3: stage 1 band [6,8], stage 2 band [4,4], gap value 5 goes to
  // stage 2 flagged, gap value 3 goes to stage 3 flagged, cost 2 is the
  // degenerate band top of the lowest stage
  CHECK(stage_of_cost(8, 3).stage == 1);
  CHECK(stage_of_cost(6, 3).stage == 1);
  CHECK(stage_of_cost(4, 3).stage == 2);
  CHECK_FALSE(stage_of_cost(4, 3).gap_flagged);
  StageSlot gap = stage_of_cost(5, 3);
  CHECK(gap.stage == 2);
  CHECK(gap.gap_flagged);
  StageSlot low_gap = stage_of_cost(3, 3);
  CHECK(low_gap.stage == 3);
  CHECK(low_gap.gap_flagged);
  CHECK(stage_of_cost(2, 3).stage == 3);
  CHECK_FALSE(stage_of_cost(2, 3).gap_flagged);
  // chat = 1: the only possible cost 2 is stage 1 (degenerate band top)
  CHECK(stage_of_cost(2, 1).stage == 1);
}

TEST_CASE("classification of a single player alone on one edge") {
  Instance inst = gen_parallel_links(1, 2, CostModel::exp_sum());
  Routing nash{{Path{{0}, 0, 1}}};
  StageClassification cls = classify_stages(inst, nash, 0);
  CHECK(cls.c_hat == 1);
  REQUIRE(cls.players.size() == 1);
  CHECK(cls.players[0].stage == 1);
  CHECK(cls.players[0].type == PlayerType::A);
  CHECK(cls.players[0].exp_cost == 2);
}

TEST_CASE("classification of the k=4 worst Nash") {
  WorstNashFixture fx;
  int l_star = 2;  // ceil(log2 4), L* = 4 from the optimal witness
  StageClassification cls = classify_stages(fx.inst, fx.nash, l_star);
  CHECK(cls.c_hat == 3);
  for (const PlayerClassification& pc : cls.players) {
    CHECK(pc.exp_cost == 8);
    CHECK(pc.stage == 1);
    if (fx.nash.choice[pc.player_id].length() == 1) {
      CHECK(pc.type == PlayerType::A);  // single edge at congestion 3
    } else {
      // four edges of congestion 1: band 2 >= 1 > 3-1-2-1 = -1 gives type B
      CHECK(pc.type == PlayerType::B);
    }
  }
}

TEST_CASE("classification rejects non-exponential models") {
  Instance cx = gen_linear_counterexample(3, CostModel::linear_sum());
  Routing nash;
  for (int i = 0; i < 3; ++i) nash.choice.push_back(Path{{0}, 0, 1});
  CHECK_THROWS_AS(classify_stages(cx, nash, 1), Error);
}

TEST_CASE("A/B/D partition every in-band player across enumerated Nash routings") {
  Instance cx = gen_linear_counterexample(4, CostModel::exp_sum());
  OptimalResult opt = min_bottleneck_routing(cx);
  int l_star = static_cast<int>(ceil_log2(BigInt(opt.l_star)));
  NashEnumeration all = enumerate_nash(cx);
  for (const Routing& r : all.nash_routings) {
    StageClassification cls = classify_stages(cx, r, l_star);
    for (const PlayerClassification& pc : cls.players) {
      if (pc.stage >= 1)
        CHECK(pc.type != PlayerType::Untyped);
      else
        CHECK(pc.type == PlayerType::Untyped);
    }
  }
}

TEST_CASE("nash cost band: 2^C <= max exp cost <= L * 2^C") {
  Instance cx = gen_linear_counterexample(4, CostModel::exp_sum());
  NashEnumeration all = enumerate_nash(cx);
  int L = cx.max_strategy_length();
  for (const Routing& r : all.nash_routings) {
    int c = social_cost(cx, r);
    BigInt max_cost = 0;
    for (int i = 0; i < 4; ++i) max_cost = std::max(max_cost, player_cost(cx, r, i).key);
    CHECK(pow2(c) <= max_cost);
    CHECK(max_cost <= BigInt(L) * pow2(c));
  }
}
