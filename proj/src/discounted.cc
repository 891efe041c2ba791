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

#include "rbsolve/discounted.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "rbsolve/errors.h"

namespace rbsolve {
namespace {

SequenceLpSpec PrimalSpec(double lambda, int truncation, Player player,
                          const std::vector<double>& p, const std::vector<double>& q) {
  ValidateDiscount(lambda);
  SequenceLpSpec spec;
  spec.player = player;
  spec.stages = truncation;
  spec.weights = StageWeights::Discounted(lambda);
  spec.root = player == Player::kOne ? p : q;
  spec.opponent_prior = player == Player::kOne ? q : p;
  return spec;
}

SequenceLpSpec DualSpec(double lambda, int stages, Player player,
                        const std::vector<double>& belief, const std::vector<double>& regret) {
  ValidateDiscount(lambda);
  SequenceLpSpec spec;
  spec.player = player;
  spec.stages = stages;
  spec.weights = StageWeights::Discounted(lambda);
  spec.root = belief;
  spec.regret = regret;
  return spec;
}

void CheckBeliefPair(const BeliefVector& belief, Player owner, const RegretVector& regret) {
  if (belief.owner != owner || regret.about != Opponent(owner)) {
    throw InputError("belief/regret pair does not match the player");
  }
}

}  // namespace

void ValidateDiscount(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw InputError("discount must lie strictly inside (0, 1)");
  }
}

void DiscountedSolveConfig::Validate() const {
  ValidateDiscount(lambda);
  if (truncation < 1) throw InputError("truncation must be at least 1");
  if (!(residual_tolerance > 0.0)) throw InputError("residual tolerance must be positive");
}

LpProblem BuildDiscountedPrimalLp(const GameSpec& game, double lambda, int truncation,
                                  Player player, int horizon_cap) {
  return BuildDiscountedPrimalLp(game, lambda, truncation, player, game.p0, game.q0,
                                 horizon_cap);
}

LpProblem BuildDiscountedPrimalLp(const GameSpec& game, double lambda, int truncation,
                                  Player player, const std::vector<double>& p,
                                  const std::vector<double>& q, int horizon_cap) {
  return BuildSequenceLp(game, PrimalSpec(lambda, truncation, player, p, q), horizon_cap)
      .problem;
}

SecuritySolution SolveDiscountedPrimal(const GameSpec& game, double lambda, int truncation,
                                       Player player, const std::vector<double>& p,
                                       const std::vector<double>& q, const LpOptions& options,
                                       int horizon_cap) {
  SequenceLpResult r = SolveSequenceLp(game, PrimalSpec(lambda, truncation, player, p, q),
                                       options, horizon_cap);
  SecuritySolution s;
  s.game_value = r.value;
  s.strategy = ToBehaviorStrategy(r.plan);
  s.plan = std::move(r.plan);
  s.stage0_payoffs = std::move(r.stage0_payoffs);
  return s;
}

double DiscountedValue(const GameSpec& game, double lambda, int truncation,
                       const std::vector<double>& p, const std::vector<double>& q,
                       const LpOptions& options) {
  return SolveSequenceLp(game, PrimalSpec(lambda, truncation, Player::kOne, p, q), options)
      .value;
}

ApproxRegrets ApproxInitialRegrets(const GameSpec& game, double lambda, int truncation,
                                   const LpOptions& options) {
  ApproxRegrets out;
  out.mu.about = Player::kOne;
  out.nu.about = Player::kTwo;
  const auto w = SolveSequenceLp(
      game, PrimalSpec(lambda, truncation, Player::kTwo, game.p0, game.q0), options);
  for (double v : w.stage0_payoffs) out.mu.values.push_back(-v);
  const auto u = SolveSequenceLp(
      game, PrimalSpec(lambda, truncation, Player::kOne, game.p0, game.q0), options);
  for (double v : u.stage0_payoffs) out.nu.values.push_back(-v);
  return out;
}

LpProblem BuildDiscountedDualLpP1(const GameSpec& game, double lambda, int truncation,
                                  const BeliefVector& p, const RegretVector& nu,
                                  int horizon_cap) {
  CheckBeliefPair(p, Player::kOne, nu);
  return BuildSequenceLp(game, DualSpec(lambda, truncation + 1, Player::kOne, p.probs, nu.values),
                         horizon_cap)
      .problem;
}

LpProblem BuildDiscountedDualLpP2(const GameSpec& game, double lambda, int truncation,
                                  const RegretVector& mu, const BeliefVector& q,
                                  int horizon_cap) {
  CheckBeliefPair(q, Player::kTwo, mu);
  return BuildSequenceLp(game, DualSpec(lambda, truncation + 1, Player::kTwo, q.probs, mu.values),
                         horizon_cap)
      .problem;
}

double DiscountedDualValueP1(const GameSpec& game, double lambda, int stages,
                             const BeliefVector& p, const RegretVector& nu,
                             const LpOptions& options) {
  CheckBeliefPair(p, Player::kOne, nu);
  ValidateDiscount(lambda);
  return SolveDual(game, Player::kOne, stages, p.probs, nu.values,
                   StageWeights::Discounted(lambda), options)
      .value;
}

double DiscountedDualValueP2(const GameSpec& game, double lambda, int stages,
                             const RegretVector& mu, const BeliefVector& q,
                             const LpOptions& options) {
  CheckBeliefPair(q, Player::kTwo, mu);
  ValidateDiscount(lambda);
  return SolveDual(game, Player::kTwo, stages, q.probs, mu.values,
                   StageWeights::Discounted(lambda), options)
      .value;
}

StageStrategy ApproxStageStrategyP1(const GameSpec& game, double lambda, int truncation,
                                    const BeliefVector& p, const RegretVector& nu,
                                    const LpOptions& options) {
  CheckBeliefPair(p, Player::kOne, nu);
  ValidateDiscount(lambda);
  return SolveDual(game, Player::kOne, truncation + 1, p.probs, nu.values,
                   StageWeights::Discounted(lambda), options)
      .strategy;
}

StageStrategy ApproxStageStrategyP2(const GameSpec& game, double lambda, int truncation,
                                    const RegretVector& mu, const BeliefVector& q,
                                    const LpOptions& options) {
  CheckBeliefPair(q, Player::kTwo, mu);
  ValidateDiscount(lambda);
  return SolveDual(game, Player::kTwo, truncation + 1, q.probs, mu.values,
                   StageWeights::Discounted(lambda), options)
      .strategy;
}

RegretVector UpdateRegretDiscounted(const RegretVector& regret, const BeliefVector& belief_next,
                                    int a, int b, const GameSpec& game, double lambda,
                                    bool* diverged) {
  ValidateDiscount(lambda);
  if (belief_next.owner == regret.about) {
    throw InputError("regret update needs the belief over the other player's types");
  }
  const std::vector<double> step = ExpectedStagePayoffs(game, belief_next, a, b);
  if (step.size() != regret.values.size()) throw InputError("regret size does not match the game");
  RegretVector next = regret;
  bool big = false;
  for (std::size_t i = 0; i < step.size(); ++i) {
    next.values[i] = (regret.values[i] + lambda * step[i]) / (1.0 - lambda);
    if (!(std::abs(next.values[i]) <= kRegretDivergenceLimit)) big = true;
  }
  if (diverged) *diverged = big;
  return next;
}

DiscountedAgent::DiscountedAgent(const GameSpec& game, Player player, double lambda,
                                 int truncation, const LpOptions& options)
    : SufficientStatisticAgent(
          game, player, std::nullopt,
          player == Player::kOne ? ApproxInitialRegrets(game, lambda, truncation, options).nu
                                 : ApproxInitialRegrets(game, lambda, truncation, options).mu,
          options),
      lambda_(lambda), truncation_(truncation) {
  DiscountedSolveConfig{lambda, truncation}.Validate();
}

std::unique_ptr<Agent> DiscountedAgent::Clone() const {
  return std::make_unique<DiscountedAgent>(*this);
}

RegretVector DiscountedAgent::NextRegret(const BeliefVector& belief_next, int a, int b) const {
  bool big = false;
  RegretVector next = UpdateRegretDiscounted(regret(), belief_next, a, b, game(), lambda_, &big);
  if (big && !diverged_) {
    std::clog << "warning: anti-discounted regret exceeds " << kRegretDivergenceLimit
              << " at stage " << stage() << "; truncate the episode earlier\n";
  }
  diverged_ = diverged_ || big;
  return next;
}

void DiscountedAgent::Restart() {
  diverged_ = false;
  SufficientStatisticAgent::Restart();
}

std::unique_ptr<Agent> MakeDiscountedAgentP1(const GameSpec& game, double lambda,
                                             int truncation, const LpOptions& options) {
  return std::make_unique<DiscountedAgent>(game, Player::kOne, lambda, truncation, options);
}

std::unique_ptr<Agent> MakeDiscountedAgentP2(const GameSpec& game, double lambda,
                                             int truncation, const LpOptions& options) {
  return std::make_unique<DiscountedAgent>(game, Player::kTwo, lambda, truncation, options);
}

std::vector<BeliefPoint> SimplexVertexGrid(const GameSpec& game) {
  std::vector<BeliefPoint> grid;
  for (int k = 0; k < game.num_k(); ++k) {
    for (int l = 0; l < game.num_l(); ++l) {
      BeliefPoint point{std::vector<double>(game.num_k(), 0.0),
                        std::vector<double>(game.num_l(), 0.0)};
      point.p[k] = 1.0;
      point.q[l] = 1.0;
      grid.push_back(std::move(point));
    }
  }
  return grid;
}

ErrorCertificate ComputeErrorCertificate(const GameSpec& game, double lambda, int truncation,
                                         const std::vector<double>& p,
                                         const std::vector<double>& q,
                                         const std::vector<BeliefPoint>& extra_points,
                                         const LpOptions& options) {
  DiscountedSolveConfig{lambda, truncation}.Validate();
  ErrorCertificate c;
  c.v_trunc = DiscountedValue(game, lambda, truncation, p, q, options);

  std::vector<BeliefPoint> grid = SimplexVertexGrid(game);
  grid.insert(grid.end(), extra_points.begin(), extra_points.end());
  c.grid_sup = -1.0;
  for (const BeliefPoint& point : grid) {
    const double v = std::abs(DiscountedValue(game, lambda, truncation, point.p, point.q, options));
    if (v > c.grid_sup) {
      c.grid_sup = v;
      c.argmax_p = point.p;
      c.argmax_q = point.q;
    }
  }

  const double rest = std::pow(1.0 - lambda, truncation);
  c.sup_bound_v = c.grid_sup / (1.0 - rest);
  c.strategy_gap_bound = 2.0 * rest * (1.0 - lambda) / lambda * c.sup_bound_v;
  // The stage weights lambda (1 - lambda)^(t-1) sum to one over the infinite
  // horizon, so the tail after T stages is bounded by (1 - lambda)^T max|M|.
  c.value_interval = {c.v_trunc - c.strategy_gap_bound,
                      c.v_trunc + rest * game.MaxAbsPayoff() + c.strategy_gap_bound};
  return c;
}

int StagesForResidual(double lambda, double max_abs_payoff, double tolerance) {
  ValidateDiscount(lambda);
  if (!(tolerance > 0.0)) throw InputError("residual tolerance must be positive");
  int n = 1;
  double mass = (1.0 - lambda) * max_abs_payoff;
  while (mass >= tolerance) {
    mass *= 1.0 - lambda;
    ++n;
    if (n > 100000) throw InputError("residual tolerance unreachable");
  }
  return n;
}

}  // namespace rbsolve
