// Copyright 2026 The rbsolve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rbsolve/discounted.h"
#include "rbsolve/dual_games.h"
#include "rbsolve/errors.h"
#include "rbsolve/game_model.h"
#include "rbsolve/lp_solver.h"
#include "rbsolve/sequence_form.h"
#include "rbsolve/simulator.h"

namespace rbsolve::cli {
namespace {

using nlohmann::json;

struct CliConfig {
  std::string command;
  std::string game_path;
  int horizon = 0;
  double discount = 0.0;
  int truncation = 0;
  long episodes = 1000;
  std::uint64_t seed = 0;
  int batches = 1;
  std::string format = "text";
  std::string out_path;
  std::string p1 = "seqform";
  std::string p2 = "seqform";
  std::string strategy_path;
  std::string dump_lp_path;
  double residual_tolerance = 1e-3;

  bool has_horizon = false;
  bool has_discount = false;
  bool has_truncation = false;
  bool has_p1 = false;
  bool has_p2 = false;
};

// Horizon or (discount, truncation), never both.
void CheckTiming(const CliConfig& c, bool allow_none = false) {
  if (c.has_discount && !c.has_truncation) {
    throw InputError("--discount requires --truncation");
  }
  if (c.has_truncation && !c.has_discount) {
    throw InputError("--truncation requires --discount");
  }
  if (c.has_horizon && c.has_discount) {
    throw InputError("--horizon and --discount are mutually exclusive");
  }
  if (!allow_none && !c.has_horizon && !c.has_discount) {
    throw InputError("give --horizon, or --discount with --truncation");
  }
  if (c.has_horizon && c.horizon < 1) throw InputError("--horizon must be at least 1");
  if (c.has_discount) {
    ValidateDiscount(c.discount);
    if (c.truncation < 1) throw InputError("--truncation must be at least 1");
  }
}

std::string Fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string FmtVector(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += Fmt(v[i]);
  }
  return s + "]";
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f.precision(17);
  return f;
}

void WriteKeyValueCsv(const std::vector<std::pair<std::string, std::string>>& rows,
                      std::ostream& out) {
  out << "key,value\n";
  for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
}

std::string JoinCsv(const std::vector<double>& v) {
  std::ostringstream s;
  s.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ";" : "") << v[i];
  return s.str();
}

std::string Full(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

int CmdSolve(const CliConfig& c, const GameSpec& game, std::ostream& out) {
  CheckTiming(c);
  SecuritySolution s1;
  SecuritySolution s2;
  if (c.has_discount) {
    s1 = SolveDiscountedPrimal(game, c.discount, c.truncation, Player::kOne, game.p0, game.q0);
    s2 = SolveDiscountedPrimal(game, c.discount, c.truncation, Player::kTwo, game.p0, game.q0);
  } else {
    s1 = SolvePrimal(game, c.horizon, Player::kOne);
    s2 = SolvePrimal(game, c.horizon, Player::kTwo);
  }

  if (!c.dump_lp_path.empty()) {
    LpProblem lp1;
    LpProblem lp2;
    if (c.has_discount) {
      lp1 = BuildDiscountedPrimalLp(game, c.discount, c.truncation, Player::kOne);
      lp2 = BuildDiscountedPrimalLp(game, c.discount, c.truncation, Player::kTwo);
    } else {
      lp1 = BuildPrimalLpP1(game, c.horizon);
      lp2 = BuildPrimalLpP2(game, c.horizon);
    }
    std::ofstream f1 = OpenOut(c.dump_lp_path);
    WriteLp(lp1, f1);
    std::ofstream f2 = OpenOut(c.dump_lp_path + ".p2");
    WriteLp(lp2, f2);
  }
  if (!c.out_path.empty()) {
    std::ofstream f1 = OpenOut(c.out_path);
    WriteStrategyCsv(s1.strategy, f1);
    std::ofstream f2 = OpenOut(c.out_path + ".p2");
    WriteStrategyCsv(s2.strategy, f2);
  }

  if (c.format == "json") {
    json j;
    if (c.has_discount) {
      j["discount"] = c.discount;
      j["truncation"] = c.truncation;
    } else {
      j["horizon"] = c.horizon;
    }
    j["value"] = s1.game_value;
    j["value_p1"] = s1.game_value;
    j["value_p2"] = s2.game_value;
    j["u0"] = s1.stage0_payoffs;
    j["w0"] = s2.stage0_payoffs;
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    WriteKeyValueCsv({{"value", Full(s1.game_value)},
                      {"value_p1", Full(s1.game_value)},
                      {"value_p2", Full(s2.game_value)},
                      {"u0", JoinCsv(s1.stage0_payoffs)},
                      {"w0", JoinCsv(s2.stage0_payoffs)}},
                     out);
  } else {
    out << "game value: " << Fmt(s1.game_value) << '\n'
        << "player 1 LP: " << Fmt(s1.game_value) << '\n'
        << "player 2 LP: " << Fmt(s2.game_value) << '\n'
        << "u0 (player 1 security payoff per player 2 type): " << FmtVector(s1.stage0_payoffs)
        << '\n'
        << "w0 (player 2 security payoff per player 1 type): " << FmtVector(s2.stage0_payoffs)
        << '\n';
    if (!c.out_path.empty()) {
      out << "strategies: " << c.out_path << ", " << c.out_path << ".p2\n";
    }
  }
  return kExitOk;
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

int CmdRegrets(const CliConfig& c, const GameSpec& game, std::ostream& out) {
  CheckTiming(c);
  RegretVector mu;
  RegretVector nu;
  double value = 0.0;
  double dual1 = 0.0;
  double dual2 = 0.0;
  const BeliefVector p{Player::kOne, game.p0};
  const BeliefVector q{Player::kTwo, game.q0};
  if (c.has_discount) {
    const ApproxRegrets r = ApproxInitialRegrets(game, c.discount, c.truncation);
    mu = r.mu;
    nu = r.nu;
    value = DiscountedValue(game, c.discount, c.truncation, game.p0, game.q0);
    dual1 = DiscountedDualValueP2(game, c.discount, c.truncation, mu, q);
    dual2 = DiscountedDualValueP1(game, c.discount, c.truncation, p, nu);
  } else {
    mu = InitialRegretMu(game, c.horizon);
    nu = InitialRegretNu(game, c.horizon);
    value = SolvePrimal(game, c.horizon, Player::kOne).game_value;
    dual1 = DualValueP2(game, c.horizon, mu, q);
    dual2 = DualValueP1(game, c.horizon, p, nu);
  }
  const double fenchel_mu = -Dot(game.p0, mu.values);
  const double fenchel_nu = -Dot(game.q0, nu.values);

  if (c.format == "json") {
    json j;
    j["mu"] = mu.values;
    j["nu"] = nu.values;
    j["value"] = value;
    j["neg_p0_dot_mu"] = fenchel_mu;
    j["neg_q0_dot_nu"] = fenchel_nu;
    j["dual_value_mu_q0"] = dual1;
    j["dual_value_p0_nu"] = dual2;
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    WriteKeyValueCsv({{"mu", JoinCsv(mu.values)},
                      {"nu", JoinCsv(nu.values)},
                      {"value", Full(value)},
                      {"neg_p0_dot_mu", Full(fenchel_mu)},
                      {"neg_q0_dot_nu", Full(fenchel_nu)},
                      {"dual_value_mu_q0", Full(dual1)},
                      {"dual_value_p0_nu", Full(dual2)}},
                     out);
  } else {
    out << "mu (regret about player 1 types): " << FmtVector(mu.values) << '\n'
        << "nu (regret about player 2 types): " << FmtVector(nu.values) << '\n'
        << "game value: " << Fmt(value) << '\n'
        << "-p0.mu: " << Fmt(fenchel_mu) << '\n'
        << "-q0.nu: " << Fmt(fenchel_nu) << '\n'
        << "dual value at (mu, q0): " << Fmt(dual1) << '\n'
        << "dual value at (p0, nu): " << Fmt(dual2) << '\n';
  }
  return kExitOk;
}

std::unique_ptr<Agent> MakeSource(const CliConfig& c, const GameSpec& game, Player player,
                                  const std::string& source, int stages) {
  const std::optional<int> horizon =
      c.has_discount ? std::optional<int>(stages) : std::optional<int>(c.horizon);
  if (source == "uniform") return std::make_unique<UniformAgent>(game, player, horizon);
  if (source == "greedy") return std::make_unique<GreedyAgent>(game, player, horizon);
  if (source == "revealing") return std::make_unique<RevealingAgent>(game, player, horizon);
  if (source == "sufficient") {
    if (c.has_discount) {
      return player == Player::kOne ? MakeDiscountedAgentP1(game, c.discount, c.truncation)
                                    : MakeDiscountedAgentP2(game, c.discount, c.truncation);
    }
    return player == Player::kOne ? MakeAgentP1(game, c.horizon)
                                  : MakeAgentP2(game, c.horizon);
  }
  if (source == "seqform") {
    if (c.has_discount) {
      throw InputError("seqform play needs --horizon; use sufficient for discounted play");
    }
    return std::make_unique<BehaviorStrategyAgent>(
        game, SolvePrimal(game, c.horizon, player).strategy);
  }
  throw InputError("unknown strategy source: " + source);
}

int CmdPlay(const CliConfig& c, const GameSpec& game, std::ostream& out) {
  CheckTiming(c);
  if (c.episodes < 1) throw InputError("--episodes must be at least 1");
  if (c.batches < 1 || c.batches > c.episodes) {
    throw InputError("--batches must lie in [1, episodes]");
  }
  SimulationConfig sim;
  sim.episodes = c.episodes;
  sim.seed = c.seed;
  sim.batches = c.batches;
  sim.keep_records = !c.out_path.empty() || c.format == "csv";
  if (c.has_discount) {
    sim.discount = c.discount;
    sim.stages = StagesForResidual(c.discount, game.MaxAbsPayoff(), c.residual_tolerance);
  } else {
    sim.stages = c.horizon;
  }
  auto agent1 = MakeSource(c, game, Player::kOne, c.p1, sim.stages);
  auto agent2 = MakeSource(c, game, Player::kTwo, c.p2, sim.stages);
  const SimulationResult result = RunEpisodes(game, *agent1, *agent2, sim);

  if (!c.out_path.empty()) {
    std::ofstream f = OpenOut(c.out_path);
    WriteEpisodeCsv(result.records, sim.discount, f);
  }
  const SimulationSummary& s = result.summary;
  if (c.format == "json") {
    out << SummaryJson(s) << '\n';
  } else if (c.format == "csv") {
    if (c.out_path.empty()) WriteEpisodeCsv(result.records, sim.discount, out);
  } else {
    out << "episodes: " << s.episodes << '\n'
        << "stages: " << sim.stages << '\n'
        << "mean: " << Fmt(s.mean) << '\n'
        << "stddev: " << Fmt(s.stddev) << '\n'
        << "std error: " << Fmt(s.std_error) << '\n'
        << "min: " << Fmt(s.min) << '\n'
        << "max: " << Fmt(s.max) << '\n';
    if (s.batch_means.size() > 1) out << "batch means: " << FmtVector(s.batch_means) << '\n';
  }
  return kExitOk;
}

int CmdBounds(const CliConfig& c, const GameSpec& game, std::ostream& out) {
  if (!c.has_discount) throw InputError("bounds needs --discount and --truncation");
  CheckTiming(c);
  const ErrorCertificate cert =
      ComputeErrorCertificate(game, c.discount, c.truncation, game.p0, game.q0);
  if (c.format == "json") {
    json j;
    j["v_trunc"] = cert.v_trunc;
    j["sup_bound"] = cert.sup_bound_v;
    j["gap_bound"] = cert.strategy_gap_bound;
    j["interval"] = {cert.value_interval.first, cert.value_interval.second};
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    WriteKeyValueCsv({{"v_trunc", Full(cert.v_trunc)},
                      {"sup_bound", Full(cert.sup_bound_v)},
                      {"gap_bound", Full(cert.strategy_gap_bound)},
                      {"interval_lo", Full(cert.value_interval.first)},
                      {"interval_hi", Full(cert.value_interval.second)},
                      {"grid_sup", Full(cert.grid_sup)}},
                     out);
  } else {
    out << "truncated value: " << Fmt(cert.v_trunc) << '\n'
        << "largest |value| on grid: " << Fmt(cert.grid_sup) << " at p="
        << FmtVector(cert.argmax_p) << " q=" << FmtVector(cert.argmax_q) << '\n'
        << "sup bound: " << Fmt(cert.sup_bound_v) << '\n'
        << "strategy gap bound: " << Fmt(cert.strategy_gap_bound) << '\n'
        << "value interval: [" << Fmt(cert.value_interval.first) << ", "
        << Fmt(cert.value_interval.second) << "]\n";
  }
  return kExitOk;
}

int CmdBestResponse(const CliConfig& c, const GameSpec& game, std::ostream& out) {
  CheckTiming(c, /*allow_none=*/true);
  if (c.strategy_path.empty()) throw InputError("best-response needs --strategy");
  if (c.has_p1 && c.has_p2) throw InputError("name at most one of --p1/--p2 as the strategy");
  const std::string& tag = c.has_p2 ? c.p2 : c.p1;
  if ((c.has_p1 || c.has_p2) && tag != "strategy") {
    throw InputError("best-response reads --p1 strategy or --p2 strategy");
  }
  const Player owner = c.has_p2 ? Player::kTwo : Player::kOne;
  std::ifstream in(c.strategy_path);
  if (!in) throw InputError("cannot read " + c.strategy_path);
  const BehaviorStrategy strategy = ReadStrategyCsv(in, game, owner);
  if (c.has_horizon && c.horizon != strategy.horizon()) {
    throw InputError("--horizon " + std::to_string(c.horizon) +
                     " does not match the strategy's " + std::to_string(strategy.horizon()) +
                     " stages");
  }
  if (c.has_discount && c.truncation != strategy.horizon()) {
    throw InputError("--truncation does not match the strategy's stage count");
  }
  const StageWeights weights =
      c.has_discount ? StageWeights::Discounted(c.discount) : StageWeights::Finite();
  const RealizationPlan plan =
      ToRealizationPlan(strategy, owner == Player::kOne ? game.p0 : game.q0);
  const BestResponse br = BestResponseValue(game, plan, weights);

  if (c.format == "json") {
    json j;
    j["player"] = owner == Player::kOne ? 1 : 2;
    j["value"] = br.value;
    j["stage0"] = br.stage0_payoffs;
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    WriteKeyValueCsv({{"player", owner == Player::kOne ? "1" : "2"},
                      {"value", Full(br.value)},
                      {"stage0", JoinCsv(br.stage0_payoffs)}},
                     out);
  } else {
    out << "strategy of player " << (owner == Player::kOne ? 1 : 2) << '\n'
        << "best-response value: " << Fmt(br.value) << '\n'
        << "per opponent type: " << FmtVector(br.stage0_payoffs) << '\n';
  }
  return kExitOk;
}

void AddCommon(CLI::App* sub, CliConfig& c) {
  sub->add_option("--game", c.game_path, "game JSON file")->required();
  sub->add_option("--horizon", c.horizon, "number of stages");
  sub->add_option("--discount", c.discount, "discount factor lambda in (0, 1)");
  sub->add_option("--truncation", c.truncation, "truncation horizon T");
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("--out", c.out_path, "output file");
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Solver for two-player zero-sum repeated Bayesian games"};
  app.name("rbsolve");
  app.require_subcommand(1, 1);

  CLI::App* solve = app.add_subcommand("solve", "security strategies and game value");
  AddCommon(solve, c);
  solve->add_option("--dump-lp", c.dump_lp_path, "write both primal LPs as plain text");

  CLI::App* regrets = app.add_subcommand("regrets", "initial regrets of the dual games");
  AddCommon(regrets, c);

  CLI::App* play = app.add_subcommand("play", "simulate episodes");
  AddCommon(play, c);
  const std::vector<std::string> sources{"seqform", "sufficient", "uniform", "greedy",
                                         "revealing"};
  play->add_option("--p1", c.p1, "player 1 strategy source")->check(CLI::IsMember(sources));
  play->add_option("--p2", c.p2, "player 2 strategy source")->check(CLI::IsMember(sources));
  play->add_option("--episodes", c.episodes, "number of episodes");
  play->add_option("--seed", c.seed, "base seed");
  play->add_option("--batches", c.batches, "split episodes into batches");

  CLI::App* bounds = app.add_subcommand("bounds", "error certificate of a truncated game");
  AddCommon(bounds, c);

  CLI::App* best = app.add_subcommand("best-response", "security level of a strategy file");
  AddCommon(best, c);
  best->add_option("--strategy", c.strategy_path, "strategy CSV")->required();
  best->add_option("--p1", c.p1, "'strategy' if the file is player 1's");
  best->add_option("--p2", c.p2, "'strategy' if the file is player 2's");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  c.command = chosen->get_name();
  c.has_horizon = chosen->count("--horizon") > 0;
  c.has_discount = chosen->count("--discount") > 0;
  c.has_truncation = chosen->count("--truncation") > 0;
  c.has_p1 = chosen->get_option_no_throw("--p1") && chosen->count("--p1") > 0;
  c.has_p2 = chosen->get_option_no_throw("--p2") && chosen->count("--p2") > 0;

  try {
    const GameSpec game = LoadGameFile(c.game_path);
    if (c.command == "solve") return CmdSolve(c, game, out);
    if (c.command == "regrets") return CmdRegrets(c, game, out);
    if (c.command == "play") return CmdPlay(c, game, out);
    if (c.command == "bounds") return CmdBounds(c, game, out);
    return CmdBestResponse(c, game, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace rbsolve::cli
