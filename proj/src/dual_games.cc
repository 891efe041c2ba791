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

#include "rbsolve/dual_games.h"

#include <string>
#include <utility>

#include "rbsolve/errors.h"

namespace rbsolve {
namespace {

constexpr double kZeroBelief = 1e-12;

RegretVector NegatedStage0(const GameSpec& game, int horizon, Player player,
                           const LpOptions& options, int horizon_cap) {
  const SecuritySolution s = SolvePrimal(game, horizon, player, options, horizon_cap);
  RegretVector r;
  r.about = Opponent(player);
  for (double v : s.stage0_payoffs) r.values.push_back(-v);
  return r;
}

SequenceLpSpec DualSpec(Player player, int stages, const std::vector<double>& belief,
                        const std::vector<double>& regret, StageWeights weights) {
  SequenceLpSpec spec;
  spec.player = player;
  spec.stages = stages;
  spec.root = belief;
  spec.weights = weights;
  spec.regret = regret;
  return spec;
}

void CheckOwner(const BeliefVector& belief, Player owner, const char* what) {
  if (belief.owner != owner) throw InputError(std::string(what) + " belongs to the wrong player");
}

void CheckAbout(const RegretVector& regret, Player about, const char* what) {
  if (regret.about != about) throw InputError(std::string(what) + " is about the wrong player");
}

}  // namespace

RegretVector InitialRegretMu(const GameSpec& game, int horizon, const LpOptions& options,
                             int horizon_cap) {
  return NegatedStage0(game, horizon, Player::kTwo, options, horizon_cap);
}

RegretVector InitialRegretNu(const GameSpec& game, int horizon, const LpOptions& options,
                             int horizon_cap) {
  return NegatedStage0(game, horizon, Player::kOne, options, horizon_cap);
}

LpProblem BuildDualLpP1(const GameSpec& game, int stages, const BeliefVector& p,
                        const RegretVector& nu, int horizon_cap) {
  CheckOwner(p, Player::kOne, "p");
  CheckAbout(nu, Player::kTwo, "nu");
  return BuildSequenceLp(game, DualSpec(Player::kOne, stages, p.probs, nu.values, {}),
                         horizon_cap)
      .problem;
}

LpProblem BuildDualLpP2(const GameSpec& game, int stages, const RegretVector& mu,
                        const BeliefVector& q, int horizon_cap) {
  CheckOwner(q, Player::kTwo, "q");
  CheckAbout(mu, Player::kOne, "mu");
  return BuildSequenceLp(game, DualSpec(Player::kTwo, stages, q.probs, mu.values, {}),
                         horizon_cap)
      .problem;
}

DualSolution SolveDual(const GameSpec& game, Player player, int stages,
                       const std::vector<double>& belief, const std::vector<double>& regret,
                       StageWeights weights, const LpOptions& options, int horizon_cap) {
  SequenceLpResult r = SolveSequenceLp(
      game, DualSpec(player, stages, belief, regret, weights), options, horizon_cap);
  DualSolution out;
  out.value = r.value;
  out.basis = std::move(r.basis);
  out.strategy.owner = player;
  const StageTensor& x = r.plan.weights;
  const int actions = x.num_actions();
  for (int type = 0; type < x.num_types(); ++type) {
    std::vector<double> row(actions, 1.0 / actions);
    double total = 0.0;
    for (int a = 0; a < actions; ++a) total += x.At(1, type, 0, a);
    if (belief[type] > kZeroBelief && total > 0.0) {
      for (int a = 0; a < actions; ++a) row[a] = x.At(1, type, 0, a) / total;
    }
    out.strategy.rows.push_back(std::move(row));
  }
  return out;
}

double DualValueP1(const GameSpec& game, int stages, const BeliefVector& p,
                   const RegretVector& nu, const LpOptions& options) {
  CheckOwner(p, Player::kOne, "p");
  CheckAbout(nu, Player::kTwo, "nu");
  return SolveDual(game, Player::kOne, stages, p.probs, nu.values, {}, options).value;
}

double DualValueP2(const GameSpec& game, int stages, const RegretVector& mu,
                   const BeliefVector& q, const LpOptions& options) {
  CheckOwner(q, Player::kTwo, "q");
  CheckAbout(mu, Player::kOne, "mu");
  return SolveDual(game, Player::kTwo, stages, q.probs, mu.values, {}, options).value;
}

StageStrategy DualStageStrategyP1(const GameSpec& game, int stages, const BeliefVector& p,
                                  const RegretVector& nu, const LpOptions& options) {
  CheckOwner(p, Player::kOne, "p");
  CheckAbout(nu, Player::kTwo, "nu");
  return SolveDual(game, Player::kOne, stages, p.probs, nu.values, {}, options).strategy;
}

StageStrategy DualStageStrategyP2(const GameSpec& game, int stages, const RegretVector& mu,
                                  const BeliefVector& q, const LpOptions& options) {
  CheckOwner(q, Player::kTwo, "q");
  CheckAbout(mu, Player::kOne, "mu");
  return SolveDual(game, Player::kTwo, stages, q.probs, mu.values, {}, options).strategy;
}

BeliefVector UpdateBelief(const BeliefVector& belief, const StageStrategy& stage,
                          int observed_action) {
  if (stage.num_types() != static_cast<int>(belief.probs.size())) {
    throw InputError("stage strategy and belief disagree on the number of types");
  }
  BeliefVector next = belief;
  double marginal = 0.0;
  for (std::size_t i = 0; i < belief.probs.size(); ++i) {
    const auto& row = stage.rows[i];
    if (observed_action < 0 || observed_action >= static_cast<int>(row.size())) {
      throw InputError("observed action out of range");
    }
    next.probs[i] = belief.probs[i] * row[observed_action];
    marginal += next.probs[i];
  }
  if (marginal <= kZeroBelief) return belief;
  for (double& x : next.probs) x /= marginal;
  return next;
}

std::vector<double> ExpectedStagePayoffs(const GameSpec& game, const BeliefVector& belief,
                                         int a, int b) {
  if (a < 0 || a >= game.num_a() || b < 0 || b >= game.num_b()) {
    throw InputError("action out of range");
  }
  const bool over_k = belief.owner == Player::kOne;
  const int own = over_k ? game.num_k() : game.num_l();
  const int other = over_k ? game.num_l() : game.num_k();
  if (static_cast<int>(belief.probs.size()) != own) {
    throw InputError("belief size does not match the game");
  }
  std::vector<double> out(other, 0.0);
  for (int j = 0; j < other; ++j) {
    for (int i = 0; i < own; ++i) {
      out[j] += belief.probs[i] * (over_k ? game.M(i, j, a, b) : game.M(j, i, a, b));
    }
  }
  return out;
}

RegretVector UpdateRegretFinite(const RegretVector& regret, const BeliefVector& belief_next,
                                int a, int b, const GameSpec& game) {
  if (belief_next.owner == regret.about) {
    throw InputError("regret update needs the belief over the other player's types");
  }
  const std::vector<double> step = ExpectedStagePayoffs(game, belief_next, a, b);
  if (step.size() != regret.values.size()) throw InputError("regret size does not match the game");
  RegretVector next = regret;
  for (std::size_t i = 0; i < step.size(); ++i) next.values[i] += step[i];
  return next;
}

SufficientStatisticAgent::SufficientStatisticAgent(const GameSpec& game, Player player,
                                                   int horizon, const LpOptions& options)
    : SufficientStatisticAgent(
          game, player, horizon,
          player == Player::kOne ? InitialRegretNu(game, horizon, options)
                                 : InitialRegretMu(game, horizon, options),
          options) {}

SufficientStatisticAgent::SufficientStatisticAgent(const GameSpec& game, Player player,
                                                   std::optional<int> horizon,
                                                   RegretVector initial_regret,
                                                   const LpOptions& options)
    : Agent(game, player, horizon), options_(options),
      initial_regret_(std::move(initial_regret)) {
  Restart();
}

std::unique_ptr<Agent> SufficientStatisticAgent::Clone() const {
  return std::make_unique<SufficientStatisticAgent>(*this);
}

int SufficientStatisticAgent::LpStages() const { return *horizon() + 1 - stage(); }

RegretVector SufficientStatisticAgent::NextRegret(const BeliefVector& belief_next, int a,
                                                  int b) const {
  return UpdateRegretFinite(regret_, belief_next, a, b, game());
}

StageStrategy SufficientStatisticAgent::ComputeStrategy() {
  if (stage() == 1 && first_stage_) {
    last_basis_ = first_stage_->basis;
    return first_stage_->strategy;
  }
  LpOptions options = options_;
  if (!last_basis_.empty()) options.warm_basis = &last_basis_;
  DualSolution solution = SolveDual(game(), player(), LpStages(), belief_.probs,
                                    regret_.values, LpWeights(), options);
  if (stage() == 1) first_stage_ = solution;
  last_basis_ = std::move(solution.basis);
  return std::move(solution.strategy);
}

void SufficientStatisticAgent::Update(int a, int b, const StageStrategy& played) {
  const int own_action = player() == Player::kOne ? a : b;
  BeliefVector next = UpdateBelief(belief_, played, own_action);
  regret_ = NextRegret(next, a, b);
  belief_ = std::move(next);
}

void SufficientStatisticAgent::Restart() {
  belief_.owner = player();
  belief_.probs = player() == Player::kOne ? game().p0 : game().q0;
  regret_ = initial_regret_;
  last_basis_ = {};
}

std::unique_ptr<Agent> MakeAgentP1(const GameSpec& game, int horizon, const LpOptions& options) {
  return std::make_unique<SufficientStatisticAgent>(game, Player::kOne, horizon, options);
}

std::unique_ptr<Agent> MakeAgentP2(const GameSpec& game, int horizon, const LpOptions& options) {
  return std::make_unique<SufficientStatisticAgent>(game, Player::kTwo, horizon, options);
}

}  // namespace rbsolve
