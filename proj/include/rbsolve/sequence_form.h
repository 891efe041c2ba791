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

#ifndef RBSOLVE_SEQUENCE_FORM_H_
#define RBSOLVE_SEQUENCE_FORM_H_

#include <iosfwd>
#include <optional>
#include <vector>

#include "rbsolve/game_model.h"
#include "rbsolve/lp_solver.h"

namespace rbsolve {

// Stage payoff weight and continuation weight of the backward recursions.
// Finite-horizon games use {1, 1}; the truncated discounted game uses
// {lambda, 1 - lambda} on anti-discounted payoffs.
struct StageWeights {
  double immediate = 1.0;
  double continuation = 1.0;

  static StageWeights Finite() { return {1.0, 1.0}; }
  static StageWeights Discounted(double lambda) { return {lambda, 1.0 - lambda}; }
};

// Per-stage tensor [own type][history at stage t][own action], t = 1..horizon.
// Shared storage of realization plans and behavior strategies.
class StageTensor {
 public:
  StageTensor() = default;
  StageTensor(Player owner, const HistoryIndex& index, int num_types, int num_actions);

  Player owner() const { return owner_; }
  int horizon() const { return index_.horizon(); }
  int num_types() const { return num_types_; }
  int num_actions() const { return num_actions_; }
  const HistoryIndex& index() const { return index_; }

  double& At(int stage, int type, int h, int action) {
    return data_[stage - 1][Offset(stage, type, h, action)];
  }
  double At(int stage, int type, int h, int action) const {
    return data_[stage - 1][Offset(stage, type, h, action)];
  }
  // The owner's own action that led into history h (h at stage >= 2).
  int OwnLastAction(int h) const {
    return owner_ == Player::kOne ? index_.LastA(h) : index_.LastB(h);
  }

 private:
  std::size_t Offset(int stage, int type, int h, int action) const {
    return (static_cast<std::size_t>(type) * index_.Count(stage) + h) * num_actions_ + action;
  }

  Player owner_ = Player::kOne;
  HistoryIndex index_{1, 1, 1};
  int num_types_ = 0;
  int num_actions_ = 0;
  std::vector<std::vector<double>> data_;
};

// Sequence-form weights x^{a_t}_{k,h_t} (player 1) or y^{b_t}_{l,h_t}
// (player 2): the root weight of the type times the product of the owner's
// action probabilities along the history.
struct RealizationPlan {
  std::vector<double> root;  // p (player 1) or q (player 2)
  StageTensor weights;

  Player owner() const { return weights.owner(); }
  int horizon() const { return weights.horizon(); }
  // Weight of the history's parent sequence, root[type] at stage 1.
  double ParentWeight(int stage, int type, int h) const;
  // Largest violation of flow conservation or nonnegativity.
  double MaxFlowViolation() const;
};

// sigma_t(k, h_t) or tau_t(l, h_t): per stage, type and history, a
// distribution over the owner's actions.
struct BehaviorStrategy {
  StageTensor probs;

  Player owner() const { return probs.owner(); }
  int horizon() const { return probs.horizon(); }
  std::vector<double> Mix(int stage, int type, int h) const;
};

BehaviorStrategy UniformStrategy(const GameSpec& game, Player owner, int horizon,
                                 int horizon_cap = kDefaultHorizonCap);

// Quotient rule; a parent weight <= 1e-9 yields the uniform distribution.
BehaviorStrategy ToBehaviorStrategy(const RealizationPlan& plan);
RealizationPlan ToRealizationPlan(const BehaviorStrategy& strategy,
                                  const std::vector<double>& root);

// Describes one member of the sequence-form LP family:
//  - primal (opponent_prior set): maximize q.u_0 for player 1, minimize
//    p.w_0 for player 2;
//  - dual (regret set): maximize u~ with u_0 + nu >= u~ 1 for player 1,
//    minimize w~ with w_0 + mu <= w~ 1 for player 2.
struct SequenceLpSpec {
  Player player = Player::kOne;
  int stages = 1;
  std::vector<double> root;  // own-type weights, p or q
  StageWeights weights;
  std::optional<std::vector<double>> opponent_prior;
  std::optional<std::vector<double>> regret;
};

// Column layout: plan weights by stage/type/history/action, then the
// weighted future payoffs u (or w) by stage/opponent type/history/cell, then
// the stage-0 payoffs, then the dual epigraph variable if present. The
// terminal payoff matrices are identically zero and carry no columns.
class SequenceLpLayout {
 public:
  SequenceLpLayout(const GameSpec& game, const SequenceLpSpec& spec, int horizon_cap);

  const HistoryIndex& index() const { return index_; }
  int num_columns() const { return num_columns_; }
  int num_plan_columns() const { return num_plan_columns_; }
  int num_own_types() const { return num_own_types_; }
  int num_opp_types() const { return num_opp_types_; }
  int num_own_actions() const { return num_own_actions_; }

  int PlanColumn(int stage, int type, int h, int action) const;
  // Payoff of the opponent type for the child history g at stage s >= 2,
  // i.e. u^{a_{s-1}, b_{s-1}}_{l, h_{s-1}} with g = child(h_{s-1}, a, b).
  int PayoffColumn(int stage, int opp_type, int g) const;
  int Stage0Column(int opp_type) const { return stage0_offset_ + opp_type; }
  int EpigraphColumn() const { return epigraph_column_; }

 private:
  HistoryIndex index_;
  int num_own_types_;
  int num_opp_types_;
  int num_own_actions_;
  std::vector<int> plan_offset_;
  std::vector<int> payoff_offset_;
  int stage0_offset_ = 0;
  int epigraph_column_ = -1;
  int num_plan_columns_ = 0;
  int num_columns_ = 0;
};

struct SequenceLp {
  SequenceLpLayout layout;
  LpProblem problem;
};

SequenceLp BuildSequenceLp(const GameSpec& game, const SequenceLpSpec& spec,
                           int horizon_cap = kDefaultHorizonCap);

// Solved member of the LP family.
struct SequenceLpResult {
  double value = 0.0;
  RealizationPlan plan;
  std::vector<double> stage0_payoffs;  // u_{:,0} or w_{:,0}
  int iterations = 0;
  LpBasis basis;
};

// Throws SolverError unless the LP is optimal.
SequenceLpResult SolveSequenceLp(const GameSpec& game, const SequenceLpSpec& spec,
                                 const LpOptions& options = {},
                                 int horizon_cap = kDefaultHorizonCap);

struct SecuritySolution {
  double game_value = 0.0;
  RealizationPlan plan;
  BehaviorStrategy strategy;
  std::vector<double> stage0_payoffs;
};

LpProblem BuildPrimalLpP1(const GameSpec& game, int horizon,
                          int horizon_cap = kDefaultHorizonCap);
LpProblem BuildPrimalLpP2(const GameSpec& game, int horizon,
                          int horizon_cap = kDefaultHorizonCap);

SecuritySolution SolvePrimal(const GameSpec& game, int horizon, Player player,
                             const LpOptions& options = {},
                             int horizon_cap = kDefaultHorizonCap);

// Weighted future security payoffs of a fixed plan, by backward recursion
// with the opponent best-responding in pure actions. For a player-1 plan the
// entries are u (indexed by l); for a player-2 plan they are w (indexed by k).
struct SecurityPayoffs {
  Player plan_owner = Player::kOne;
  std::vector<double> stage0;
  // by_stage[s - 2][opp_type * Count(s) + g] for stages s = 2..T.
  std::vector<std::vector<double>> by_stage;

  // Sum over opponent types of prior * stage-0 payoff: the best-response
  // value against the plan.
  double Value(const std::vector<double>& opponent_prior) const;
};

SecurityPayoffs WeightedSecurityPayoffs(const GameSpec& game,
                                        const RealizationPlan& plan,
                                        StageWeights weights = {});

// CSV with header stage,type,history_a,history_b,action,probability. Stages
// are 1-based; types and actions are zero-based indices; histories are the
// action indices joined by '-' (empty at stage 1).
void WriteStrategyCsv(const BehaviorStrategy& strategy, std::ostream& out);
BehaviorStrategy ReadStrategyCsv(std::istream& in, const GameSpec& game, Player owner,
                                 int horizon_cap = kDefaultHorizonCap);

}  // namespace rbsolve

#endif  // RBSOLVE_SEQUENCE_FORM_H_
