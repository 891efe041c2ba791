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

#ifndef RBSOLVE_DUAL_GAMES_H_
#define RBSOLVE_DUAL_GAMES_H_

#include <memory>
#include <optional>
#include <vector>

#include "rbsolve/agent.h"
#include "rbsolve/game_model.h"
#include "rbsolve/lp_solver.h"
#include "rbsolve/sequence_form.h"

namespace rbsolve {

// (t, p_t, nu_t): what player 1 needs to keep playing securely.
struct SufficientStatisticP1 {
  int stage = 1;
  BeliefVector belief;  // over K
  RegretVector regret;  // over L
};

// (t, mu_t, q_t) for player 2.
struct SufficientStatisticP2 {
  int stage = 1;
  RegretVector regret;  // over K
  BeliefVector belief;  // over L
};

// mu* = -w_{:,0} at the optimum of player 2's primal LP.
RegretVector InitialRegretMu(const GameSpec& game, int horizon, const LpOptions& options = {},
                             int horizon_cap = kDefaultHorizonCap);
// nu* = -u_{:,0} at the optimum of player 1's primal LP.
RegretVector InitialRegretNu(const GameSpec& game, int horizon, const LpOptions& options = {},
                             int horizon_cap = kDefaultHorizonCap);

LpProblem BuildDualLpP1(const GameSpec& game, int stages, const BeliefVector& p,
                        const RegretVector& nu, int horizon_cap = kDefaultHorizonCap);
LpProblem BuildDualLpP2(const GameSpec& game, int stages, const RegretVector& mu,
                        const BeliefVector& q, int horizon_cap = kDefaultHorizonCap);

// Optimum of a dual LP together with its stage-1 behavior x_{k,.}/p^k
// (player 1) or y_{l,.}/q^l (player 2). Zero-belief types get the uniform
// distribution.
struct DualSolution {
  double value = 0.0;
  StageStrategy strategy;
  LpBasis basis;
};

// Shared by the finite and discounted dual games: `belief` is the acting
// player's own-type belief and `regret` the regret about the opponent.
DualSolution SolveDual(const GameSpec& game, Player player, int stages,
                       const std::vector<double>& belief, const std::vector<double>& regret,
                       StageWeights weights = {}, const LpOptions& options = {},
                       int horizon_cap = kDefaultHorizonCap);

// Dual values: V~2_n(p, nu) and V~1_n(mu, q).
double DualValueP1(const GameSpec& game, int stages, const BeliefVector& p,
                   const RegretVector& nu, const LpOptions& options = {});
double DualValueP2(const GameSpec& game, int stages, const RegretVector& mu,
                   const BeliefVector& q, const LpOptions& options = {});

StageStrategy DualStageStrategyP1(const GameSpec& game, int stages, const BeliefVector& p,
                                  const RegretVector& nu, const LpOptions& options = {});
StageStrategy DualStageStrategyP2(const GameSpec& game, int stages, const RegretVector& mu,
                                  const BeliefVector& q, const LpOptions& options = {});

// Bayes posterior of the belief after seeing the owner play
// `observed_action`. An observation of (near) zero probability leaves the
// prior unchanged.
BeliefVector UpdateBelief(const BeliefVector& belief, const StageStrategy& stage,
                          int observed_action);

// mu^k += sum_l q_{t+1}^l M^{kl}_{a,b} (regret about player 1, belief_next
// over L), or nu^l += sum_k p_{t+1}^k M^{kl}_{a,b} (regret about player 2,
// belief_next over K).
RegretVector UpdateRegretFinite(const RegretVector& regret, const BeliefVector& belief_next,
                                int a, int b, const GameSpec& game);

// Sum over the belief owner's types of belief * M, per type of the other
// player, for the realized action pair.
std::vector<double> ExpectedStagePayoffs(const GameSpec& game, const BeliefVector& belief,
                                         int a, int b);

// Sufficient-statistic security strategy for either player. The dual LP
// is re-solved every stage with the remaining horizon.
class SufficientStatisticAgent : public Agent {
 public:
  SufficientStatisticAgent(const GameSpec& game, Player player, int horizon,
                           const LpOptions& options = {});

  const BeliefVector& belief() const { return belief_; }
  const RegretVector& regret() const { return regret_; }
  const RegretVector& initial_regret() const { return initial_regret_; }

  std::unique_ptr<Agent> Clone() const override;

 protected:
  SufficientStatisticAgent(const GameSpec& game, Player player, std::optional<int> horizon,
                           RegretVector initial_regret, const LpOptions& options);

  // Stage count and weights of the LP solved at the current stage.
  virtual int LpStages() const;
  virtual StageWeights LpWeights() const { return StageWeights::Finite(); }
  virtual RegretVector NextRegret(const BeliefVector& belief_next, int a, int b) const;

  StageStrategy ComputeStrategy() override;
  void Update(int a, int b, const StageStrategy& played) override;
  void Restart() override;

  LpOptions options_;

 private:
  RegretVector initial_regret_;
  BeliefVector belief_;
  RegretVector regret_;
  // Only the right-hand side changes between stages when the stage count is
  // fixed, so the last optimal basis is a good start.
  LpBasis last_basis_;
  // The first stage always starts from the same statistic.
  std::optional<DualSolution> first_stage_;
};

std::unique_ptr<Agent> MakeAgentP1(const GameSpec& game, int horizon,
                                   const LpOptions& options = {});
std::unique_ptr<Agent> MakeAgentP2(const GameSpec& game, int horizon,
                                   const LpOptions& options = {});

}  // namespace rbsolve

#endif  // RBSOLVE_DUAL_GAMES_H_
