// Command-line workbench over the routing-game library: instance
// generation, validation, best-response dynamics, exact optima, Nash
// enumeration, PoA measurement, chain analysis and family sweeps.
//
// Exit codes: 0 success, 1 domain error (machine-readable payload on
// stdout), 2 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arena/chains.hpp"
#include "arena/dynamics.hpp"
#include "arena/equilibria.hpp"
#include "arena/error.hpp"
#include "arena/game.hpp"
#include "arena/generators.hpp"
#include "arena/optimal.hpp"
#include "arena/serialize.hpp"

using namespace arena;

namespace {

struct Budgets {
  std::uint64_t profile_cap = 10000000;
  std::uint64_t solver_budget = 10000000;
  std::size_t enum_cap = 1000000;
};

Budgets budgets_from_env() {
  Budgets b;
  if (const char* env = std::getenv("BOTTLENECK_ARENA_BUDGET")) {
    std::uint64_t v = std::strtoull(env, nullptr, 10);
    if (v > 0) {
      b.profile_cap = v;
      b.solver_budget = v;
      b.enum_cap = static_cast<std::size_t>(v);
    }
  }
  return b;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::parse_error, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::parse_error, "cannot open output file: " + path);
  out << text;
}

CostModel parse_model(const std::string& name, int degree) {
  if (name == "bottleneck") return CostModel::bottleneck();
  if (name == "expsum") return CostModel::exp_sum();
  if (name == "logexpsum") return CostModel::log_exp_sum();
  if (name == "linear") return CostModel::linear_sum();
  if (name == "poly") return CostModel::poly_sum(degree);
  throw Error(errc::parse_error, "unknown cost model '" + name + "'");
}

std::string rational_str(const Rational& r) {
  std::ostringstream ss;
  ss << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1)
    ss << "/" << boost::multiprecision::denominator(r);
  return ss.str();
}

Json routing_choices(const Routing& r) {
  Json out = Json::array();
  for (const Path& p : r.choice) out.push_back(p.edge_seq);
  return out;
}

// Reports are reproducible: identical command + instance + seed yields an
// identical canonical section (and report_digest); only timing_ms outside
// the digest-covered region may differ between runs.
struct ReportWriter {
  Json canonical;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  ReportWriter(const std::string& command, const std::string& instance_digest,
               std::uint64_t seed) {
    canonical["command"] = command;
    canonical["instance_digest"] = instance_digest;
    canonical["seed"] = seed;
  }

  std::string finish() {
    Json doc;
    doc["canonical"] = canonical;
    doc["report_digest"] = digest(canonical.dump(2));
    doc["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start)
            .count();
    return doc.dump(2) + "\n";
  }
};

Routing lexfirst_routing(const Instance& inst, std::size_t enum_cap) {
  Routing r;
  for (int i = 0; i < inst.player_count(); ++i)
    r.choice.push_back(inst.strategy_paths(i, enum_cap).front());
  return r;
}

Routing seeded_routing(const Instance& inst, std::uint64_t seed, std::size_t enum_cap) {
  Routing r;
  Prng root(seed);
  for (int i = 0; i < inst.player_count(); ++i) {
    auto paths = inst.strategy_paths(i, enum_cap);
    Prng local = root.split(static_cast<std::uint64_t>(i));
    r.choice.push_back(paths[local.below(paths.size())]);
  }
  return r;
}

// A verified Nash routing: user-supplied, or round-robin BRD from the
// lexicographic-first start.
Routing obtain_nash(const Instance& inst, const std::string& routing_file,
                    const Budgets& b) {
  if (!routing_file.empty()) {
    Routing r = parse_routing(read_file(routing_file), inst);
    if (!is_nash(inst, r).first)
      throw Error(errc::precondition, "supplied routing is not a Nash routing");
    return r;
  }
  BrdTrace trace = run_brd(inst, lexfirst_routing(inst, b.enum_cap),
                           Schedule::RoundRobin, 1000000);
  if (!trace.converged)
    throw Error(errc::search_budget_exceeded,
                "best response dynamics did not converge; supply a routing file");
  return trace.final;
}

Json poa_payload(const Instance& inst, const EquilibriaReport& rep) {
  Json payload;
  payload["nash_count"] = rep.nash_routings.size();
  payload["truncated"] = rep.truncated;
  payload["c_star"] = rep.c_star;
  payload["l_star"] = rep.l_star;
  payload["L"] = inst.max_strategy_length();
  payload["E"] = inst.graph().edge_count();
  if (rep.has_nash) {
    payload["worst_nash_cost"] = rep.worst_nash_cost;
    payload["best_nash_cost"] = rep.best_nash_cost;
    payload["poa"] = rational_str(rep.poa);
    payload["pos"] = rational_str(rep.pos);
    payload["bound_value"] = rep.bound_value;
    payload["bound_ratio"] = rep.bound_ratio;
  }
  return payload;
}

struct SweepRow {
  std::string family;
  int k;
  std::string model;
  int L, E, c_star, worst_nash, best_nash;
  std::string poa, pos;
  double bound_value, bound_ratio;
  bool truncated;
  bool has_nash;
};

SweepRow sweep_one(const std::string& family, int k, const CostModel& model,
                   const Budgets& b) {
  Instance inst = family == "parallel" ? gen_parallel_links(k, 2, model)
                                       : gen_linear_counterexample(k, model);
  EquilibriaReport rep = measure_poa(inst, b.profile_cap, b.solver_budget, b.enum_cap);
  SweepRow row;
  row.family = family;
  row.k = k;
  row.model = cost_model_name(model);
  row.L = inst.max_strategy_length();
  row.E = inst.graph().edge_count();
  row.c_star = rep.c_star;
  row.worst_nash = rep.worst_nash_cost;
  row.best_nash = rep.best_nash_cost;
  row.poa = rep.has_nash ? rational_str(rep.poa) : "";
  row.pos = rep.has_nash ? rational_str(rep.pos) : "";
  row.bound_value = rep.bound_value;
  row.bound_ratio = rep.bound_ratio;
  row.truncated = rep.truncated;
  row.has_nash = rep.has_nash;
  return row;
}

int run(int argc, char** argv) {
  CLI::App app{"routing-game workbench: exponential bottleneck games, "
               "best-response dynamics, Nash enumeration, PoA and chain analysis"};
  app.require_subcommand(1);
  Budgets budgets = budgets_from_env();

  // generate
  auto* generate = app.add_subcommand("generate", "construct an instance file");
  std::string family = "counterexample", model_name = "expsum", out_path = "-";
  int k = 4, players = 4, links = 2, rows = 3, cols = 3, nodes = 6, edge_count = 8,
      degree = 2;
  std::uint64_t seed = 0;
  generate->add_option("--family", family)
      ->check(CLI::IsMember({"counterexample", "parallel", "grid", "random"}));
  generate->add_option("--k", k, "counterexample size");
  generate->add_option("--players", players);
  generate->add_option("--links", links);
  generate->add_option("--rows", rows);
  generate->add_option("--cols", cols);
  generate->add_option("--nodes", nodes);
  generate->add_option("--edges", edge_count);
  generate->add_option("--seed", seed);
  generate->add_option("--model", model_name)
      ->check(CLI::IsMember({"bottleneck", "expsum", "logexpsum", "linear", "poly"}));
  generate->add_option("--degree", degree, "poly model degree");
  generate->add_option("-o,--out", out_path);

  // shared options for instance-consuming subcommands
  std::string instance_path, routing_path, report_path = "-";

  auto* validate = app.add_subcommand("validate", "check an instance file");
  validate->add_option("instance", instance_path)->required();

  auto* brd = app.add_subcommand("brd", "run best response dynamics");
  std::string schedule_name = "roundrobin", start_spec = "lexfirst";
  std::uint64_t max_steps = 1000000;
  brd->add_option("instance", instance_path)->required();
  brd->add_option("--schedule", schedule_name)
      ->check(CLI::IsMember({"roundrobin", "maxgain", "random"}));
  brd->add_option("--seed", seed, "PRNG seed for random schedule/start");
  brd->add_option("--max-steps", max_steps);
  brd->add_option("--start", start_spec, "lexfirst or random");
  brd->add_option("-o,--out", report_path);

  auto* optimal = app.add_subcommand("optimal", "exact minimum-bottleneck routing");
  optimal->add_option("instance", instance_path)->required();
  optimal->add_option("-o,--out", report_path);

  auto* verify = app.add_subcommand("verify", "Nash check of a routing file");
  verify->add_option("instance", instance_path)->required();
  verify->add_option("routing", routing_path)->required();
  verify->add_option("-o,--out", report_path);

  auto* enumerate = app.add_subcommand("enumerate", "exhaustive pure-Nash enumeration");
  std::uint64_t profile_cap_opt = 0;
  enumerate->add_option("instance", instance_path)->required();
  enumerate->add_option("--profile-cap", profile_cap_opt);
  enumerate->add_option("-o,--out", report_path);

  auto* poa = app.add_subcommand("poa", "price of anarchy / stability report");
  poa->add_option("instance", instance_path)->required();
  poa->add_option("--profile-cap", profile_cap_opt);
  poa->add_option("-o,--out", report_path);

  auto* chain = app.add_subcommand("chain", "expansion chain analysis of a Nash routing");
  std::string root_spec = "top-cost", support_mode = "greedy";
  chain->add_option("instance", instance_path)->required();
  chain->add_option("--routing", routing_path, "Nash routing file (default: BRD result)");
  chain->add_option("--root", root_spec, "comma-separated player ids or top-cost");
  chain->add_option("--support", support_mode)->check(CLI::IsMember({"greedy", "exact"}));
  chain->add_option("-o,--out", report_path);

  auto* classify = app.add_subcommand("classify", "stage/type classification of a Nash routing");
  classify->add_option("instance", instance_path)->required();
  classify->add_option("--routing", routing_path);
  classify->add_option("-o,--out", report_path);

  auto* sweep = app.add_subcommand("sweep", "PoA over a family range, CSV output");
  std::string k_range = "3..6", models_csv = "linear,expsum";
  sweep->add_option("--family", family)
      ->check(CLI::IsMember({"counterexample", "parallel"}));
  sweep->add_option("--k", k_range, "inclusive range, e.g. 3..8");
  sweep->add_option("--models", models_csv);
  sweep->add_option("--degree", degree);
  sweep->add_option("-o,--out", report_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (generate->parsed()) {
    CostModel model = parse_model(model_name, degree);
    Instance inst = [&]() {
      if (family == "counterexample") return gen_linear_counterexample(k, model);
      if (family == "parallel") return gen_parallel_links(players, links, model);
      if (family == "grid") return gen_random_grid(rows, cols, players, seed, model);
      return gen_random_graph(nodes, edge_count, players, seed, model);
    }();
    write_output(out_path, serialize_instance(inst));
    return 0;
  }

  if (sweep->parsed()) {
    auto dots = k_range.find("..");
    int k_lo = std::stoi(k_range.substr(0, dots));
    int k_hi = dots == std::string::npos ? k_lo : std::stoi(k_range.substr(dots + 2));
    if (k_lo < 2 || k_hi < k_lo)
      throw Error(errc::precondition, "bad --k range");
    std::vector<CostModel> models;
    std::stringstream ms(models_csv);
    std::string name;
    while (std::getline(ms, name, ',')) models.push_back(parse_model(name, degree));

    // Independent (k, model) cells solved concurrently over immutable
    // inputs; rows merged in deterministic order.
    std::vector<std::future<SweepRow>> futures;
    for (int kk = k_lo; kk <= k_hi; ++kk)
      for (const CostModel& m : models)
        futures.push_back(std::async(std::launch::async, sweep_one, family, kk, m,
                                     budgets));
    std::ostringstream csv;
    csv << "family,k,model,L,E,c_star,worst_nash,best_nash,poa,pos,bound_value,"
           "bound_ratio,truncated\n";
    for (auto& f : futures) {
      SweepRow row = f.get();
      csv << row.family << ',' << row.k << ',' << row.model << ',' << row.L << ','
          << row.E << ',' << row.c_star << ',';
      if (row.has_nash) csv << row.worst_nash << ',' << row.best_nash;
      else csv << ',';
      csv << ',' << row.poa << ',' << row.pos << ',' << row.bound_value << ','
          << row.bound_ratio << ',' << (row.truncated ? "true" : "false") << '\n';
    }
    write_output(report_path, csv.str());
    return 0;
  }

  std::string text = read_file(instance_path);
  Instance inst = parse_instance(text);
  std::string inst_digest = digest(serialize_instance(inst));
  std::uint64_t profile_cap = profile_cap_opt ? profile_cap_opt : budgets.profile_cap;

  if (validate->parsed()) {
    ReportWriter rep("validate", inst_digest, 0);
    rep.canonical["payload"] = {{"ok", true},
                                {"nodes", inst.graph().node_count()},
                                {"edges", inst.graph().edge_count()},
                                {"players", inst.player_count()},
                                {"L", inst.max_strategy_length()},
                                {"cost_model", cost_model_name(inst.cost_model())}};
    write_output(report_path, rep.finish());
    return 0;
  }

  if (brd->parsed()) {
    Schedule schedule = schedule_name == "roundrobin" ? Schedule::RoundRobin
                        : schedule_name == "maxgain"  ? Schedule::MaxGain
                                                      : Schedule::RandomSeeded;
    Routing start = start_spec == "lexfirst"
                        ? lexfirst_routing(inst, budgets.enum_cap)
                        : seeded_routing(inst, seed, budgets.enum_cap);
    BrdTrace trace = run_brd(inst, start, schedule, max_steps, seed);
    ReportWriter rep("brd", inst_digest, seed);
    Json steps = Json::array();
    for (const BrdStep& s : trace.steps)
      steps.push_back({{"step", s.step_index},
                       {"player", s.player_id},
                       {"old_path", s.old_path.edge_seq},
                       {"new_path", s.new_path.edge_seq},
                       {"old_cost", s.old_cost.key.str()},
                       {"new_cost", s.new_cost.key.str()},
                       {"potential_after", s.potential_after.str()}});
    rep.canonical["payload"] = {{"schedule", schedule_name},
                                {"start", start_spec},
                                {"steps", steps},
                                {"converged", trace.converged},
                                {"final", routing_choices(trace.final)},
                                {"final_social_cost", social_cost(inst, trace.final)},
                                {"final_is_nash", is_nash(inst, trace.final).first}};
    write_output(report_path, rep.finish());
    return 0;
  }

  if (optimal->parsed()) {
    OptimalResult opt = min_bottleneck_routing(inst, budgets.solver_budget, budgets.enum_cap);
    ReportWriter rep("optimal", inst_digest, 0);
    rep.canonical["payload"] = {{"c_star", opt.c_star},
                                {"l_star", opt.l_star},
                                {"nodes_explored", opt.nodes_explored},
                                {"witness", routing_choices(opt.witness)}};
    write_output(report_path, rep.finish());
    return 0;
  }

  if (verify->parsed()) {
    Routing r = parse_routing(read_file(routing_path), inst);
    auto [nash, improvers] = is_nash(inst, r);
    ReportWriter rep("verify", inst_digest, 0);
    Json imp = Json::array();
    for (const auto& [pid, path] : improvers)
      imp.push_back({{"player", pid}, {"improving_path", path.edge_seq}});
    rep.canonical["payload"] = {{"nash", nash},
                                {"improvers", imp},
                                {"social_cost", social_cost(inst, r)}};
    write_output(report_path, rep.finish());
    return 0;
  }

  if (enumerate->parsed()) {
    NashEnumeration nash = enumerate_nash(inst, profile_cap, budgets.enum_cap);
    ReportWriter rep("enumerate", inst_digest, 0);
    Json list = Json::array();
    for (const Routing& r : nash.nash_routings) list.push_back(routing_choices(r));
    rep.canonical["payload"] = {{"count", nash.nash_routings.size()},
                                {"truncated", nash.truncated},
                                {"nash_routings", list}};
    write_output(report_path, rep.finish());
    return 0;
  }

  if (poa->parsed()) {
    EquilibriaReport r = measure_poa(inst, profile_cap, budgets.solver_budget,
                                     budgets.enum_cap);
    ReportWriter rep("poa", inst_digest, 0);
    rep.canonical["payload"] = poa_payload(inst, r);
    write_output(report_path, rep.finish());
    return 0;
  }

  if (chain->parsed() || classify->parsed()) {
    Routing nash = obtain_nash(inst, routing_path, budgets);
    OptimalResult opt = min_bottleneck_routing(inst, budgets.solver_budget, budgets.enum_cap);

    if (classify->parsed()) {
      int l_star = static_cast<int>(opt.l_star <= 1 ? 0 : ceil_log2(BigInt(opt.l_star)));
      StageClassification cls = classify_stages(inst, nash, l_star);
      ReportWriter rep("classify", inst_digest, 0);
      Json list = Json::array();
      for (const PlayerClassification& pc : cls.players) {
        const char* type = pc.type == PlayerType::A   ? "A"
                           : pc.type == PlayerType::B ? "B"
                           : pc.type == PlayerType::D ? "D"
                                                      : "untyped";
        list.push_back({{"player", pc.player_id},
                        {"stage", pc.stage},
                        {"gap_flagged", pc.gap_flagged},
                        {"type", type},
                        {"exp_cost", pc.exp_cost.str()}});
      }
      rep.canonical["payload"] = {{"c_hat", cls.c_hat},
                                  {"l_star", cls.l_star},
                                  {"players", list},
                                  {"routing", routing_choices(nash)}};
      write_output(report_path, rep.finish());
      return 0;
    }

    PlayerSet root;
    if (root_spec == "top-cost") {
      Cost best{0, false};
      int who = 0;
      for (int i = 0; i < inst.player_count(); ++i) {
        Cost c = player_cost(inst, nash, i);
        if (best < c) {
          best = c;
          who = i;
        }
      }
      root.insert(who);
    } else {
      std::stringstream rs(root_spec);
      std::string id;
      while (std::getline(rs, id, ',')) root.insert(std::stoi(id));
    }
    SupportMode mode = support_mode == "exact" ? SupportMode::ExactMinimal
                                               : SupportMode::Greedy;
    ChainReport report = build_expansion_chain(inst, nash, opt.witness, root, mode);
    ReportWriter rep("chain", inst_digest, 0);
    Json stages = Json::array();
    for (const ChainStage& st : report.stages) {
      stages.push_back({{"stage", st.stage_index},
                        {"players", std::vector<int>(st.players.begin(), st.players.end())},
                        {"cost_low", st.cost_low.str()},
                        {"cost_high", st.cost_high.str()},
                        {"support_edges",
                         std::vector<int>(st.support_edges.begin(), st.support_edges.end())}});
    }
    rep.canonical["payload"] = {{"root", std::vector<int>(root.begin(), root.end())},
                                {"stages", stages},
                                {"self_sufficient_at", report.self_sufficient_at},
                                {"c_hat", report.c_hat},
                                {"l_star", report.l_star},
                                {"routing", routing_choices(nash)}};
    write_output(report_path, rep.finish());
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    Json err = {{"error", e.code()}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json err = {{"error", "internal"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
}
