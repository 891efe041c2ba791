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

#ifndef RBSOLVE_DISCOUNTED_H_
#define RBSOLVE_DISCOUNTED_H_

#include <memory>
#include <utility>
#include <vector>

#include "rbsolve/dual_games.h"
#include "rbsolve/game_model.h"
#include "rbsolve/lp_solver.h"
#include "rbsolve/sequence_form.h"

namespace rbsolve {

struct DiscountedSolveConfig {
  double lambda = 0.5;
  int truncation = 1;
  // Absolute payoff mass below which a simulated episode is cut off.
  double residual_tolerance = 1e-3;

  void Validate() const;
};

// Throws InputError unless 0 < lambda < 1.
void ValidateDiscount(double lambda);

// Truncated anti-discounted primal LP of `player`, rooted at (p, q).
LpProblem BuildDiscountedPrimalLp(const GameSpec& game, double lambda, int truncation,
                                  Player player, int horizon_cap = kDefaultHorizonCap);
LpProblem BuildDiscountedPrimalLp(const GameSpec& game, double lambda, int truncation,
                                  Player player, const std::vector<double>& p,
                                  const std::vector<double>& q,
                                  int horizon_cap = kDefaultHorizonCap);

// V_{lambda,T}(p, q) from `player`'s LP, with the optimal plan and
// u_{:,0;lambda,T} or w_{:,0;lambda,T}. Degenerate (vertex) beliefs are
// accepted here.
SecuritySolution SolveDiscountedPrimal(const GameSpec& game, double lambda, int truncation,
                                       Player player, const std::vector<double>& p,
                                       const std::vector<double>& q,
                                       const LpOptions& options = {},
                                       int horizon_cap = kDefaultHorizonCap);
double DiscountedValue(const GameSpec& game, double lambda, int truncation,
                       const std::vector<double>& p, const std::vector<double>& q,
                       const LpOptions& options = {});

struct ApproxRegrets {
  RegretVector mu;  // about player 1, -w_{:,0;lambda,T}
  RegretVector nu;  // about player 2, -u_{:,0;lambda,T}
};

ApproxRegrets ApproxInitialRegrets(const GameSpec& game, double lambda, int truncation,
                                   const LpOptions& options = {});

// (T+1)-stage anti-discounted dual LPs.
LpProblem BuildDiscountedDualLpP1(const GameSpec& game, double lambda, int truncation,
                                  const BeliefVector& p, const RegretVector& nu,
                                  int horizon_cap = kDefaultHorizonCap);
LpProblem BuildDiscountedDualLpP2(const GameSpec& game, double lambda, int truncation,
                                  const RegretVector& mu, const BeliefVector& q,
                                  int horizon_cap = kDefaultHorizonCap);

// Anti-discounted dual values over an explicit number of stages.
double DiscountedDualValueP1(const GameSpec& game, double lambda, int stages,
                             const BeliefVector& p, const RegretVector& nu,
                             const LpOptions& options = {});
double DiscountedDualValueP2(const GameSpec& game, double lambda, int stages,
                             const RegretVector& mu, const BeliefVector& q,
                             const LpOptions& options = {});

// Stage-1 behavior of the (T+1)-stage dual LPs.
StageStrategy ApproxStageStrategyP1(const GameSpec& game, double lambda, int truncation,
                                    const BeliefVector& p, const RegretVector& nu,
                                    const LpOptions& options = {});
StageStrategy ApproxStageStrategyP2(const GameSpec& game, double lambda, int truncation,
                                    const RegretVector& mu, const BeliefVector& q,
                                    const LpOptions& options = {});

inline constexpr double kRegretDivergenceLimit = 1e12;

// (regret + lambda * sum belief_next * M) / (1 - lambda). Sets *diverged
// when an entry exceeds kRegretDivergenceLimit in magnitude.
RegretVector UpdateRegretDiscounted(const RegretVector& regret, const BeliefVector& belief_next,
                                    int a, int b, const GameSpec& game, double lambda,
                                    bool* diverged = nullptr);

// Discounted sufficient-statistic agent. Runs without a horizon; the caller truncates.
class DiscountedAgent : public SufficientStatisticAgent {
 public:
  DiscountedAgent(const GameSpec& game, Player player, double lambda, int truncation,
                  const LpOptions& options = {});

  double lambda() const { return lambda_; }
  int truncation() const { return truncation_; }
  bool diverged() const { return diverged_; }

  std::unique_ptr<Agent> Clone() const override;

 protected:
  int LpStages() const override { return truncation_ + 1; }
  StageWeights LpWeights() const override { return StageWeights::Discounted(lambda_); }
  RegretVector NextRegret(const BeliefVector& belief_next, int a, int b) const override;
  void Restart() override;

 private:
  double lambda_;
  int truncation_;
  mutable bool diverged_ = false;
};

std::unique_ptr<Agent> MakeDiscountedAgentP1(const GameSpec& game, double lambda,
                                             int truncation, const LpOptions& options = {});
std::unique_ptr<Agent> MakeDiscountedAgentP2(const GameSpec& game, double lambda,
                                             int truncation, const LpOptions& options = {});

struct ErrorCertificate {
  double v_trunc = 0.0;
  double sup_bound_v = 0.0;
  double strategy_gap_bound = 0.0;
  std::pair<double, double> value_interval{0.0, 0.0};
  // max |V_{lambda,T}| over the evaluated belief grid and where it occurs.
  double grid_sup = 0.0;
  std::vector<double> argmax_p;
  std::vector<double> argmax_q;
};

struct BeliefPoint {
  std::vector<double> p;
  std::vector<double> q;
};

// Every (vertex of Delta(K), vertex of Delta(L)) pair.
std::vector<BeliefPoint> SimplexVertexGrid(const GameSpec& game);

// Bounds at (p, q) from the truncated value, a sup-norm estimate over the
// vertex grid plus `extra_points`, and the (1 - lambda)^T convergence rate.
ErrorCertificate ComputeErrorCertificate(const GameSpec& game, double lambda, int truncation,
                                         const std::vector<double>& p,
                                         const std::vector<double>& q,
                                         const std::vector<BeliefPoint>& extra_points = {},
                                         const LpOptions& options = {});

// Smallest n with (1 - lambda)^n * max|M| < tolerance (at least 1).
int StagesForResidual(double lambda, double max_abs_payoff, double tolerance);

}  // namespace rbsolve

#endif  // RBSOLVE_DISCOUNTED_H_
