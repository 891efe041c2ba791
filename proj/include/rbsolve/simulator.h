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

#ifndef RBSOLVE_SIMULATOR_H_
#define RBSOLVE_SIMULATOR_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rbsolve/agent.h"
#include "rbsolve/game_model.h"
#include "rbsolve/sequence_form.h"

namespace rbsolve {

// Plays a fixed history-indexed behavior strategy.
class BehaviorStrategyAgent : public Agent {
 public:
  BehaviorStrategyAgent(const GameSpec& game, BehaviorStrategy strategy);
  std::unique_ptr<Agent> Clone() const override;

 protected:
  StageStrategy ComputeStrategy() override;
  void Update(int a, int b, const StageStrategy& played) override;
  void Restart() override { history_ = 0; }

 private:
  BehaviorStrategy strategy_;
  int history_ = 0;
};

// Uniform over own actions, every type, every stage.
class UniformAgent : public Agent {
 public:
  UniformAgent(const GameSpec& game, Player player, std::optional<int> horizon = std::nullopt);
  std::unique_ptr<Agent> Clone() const override;

 protected:
  StageStrategy ComputeStrategy() override;
  void Update(int, int, const StageStrategy&) override {}
  void Restart() override {}
};

// Myopic: each type plays the pure action that is best for the current
// stage against the opponent's prior and a uniform opponent action.
class GreedyAgent : public Agent {
 public:
  GreedyAgent(const GameSpec& game, Player player, std::optional<int> horizon = std::nullopt);
  std::unique_ptr<Agent> Clone() const override;

 protected:
  StageStrategy ComputeStrategy() override;
  void Update(int, int, const StageStrategy&) override {}
  void Restart() override {}
};

// Type i always plays action i mod |actions|, which reveals the type
// whenever there are enough actions.
class RevealingAgent : public Agent {
 public:
  RevealingAgent(const GameSpec& game, Player player, std::optional<int> horizon = std::nullopt);
  std::unique_ptr<Agent> Clone() const override;

 protected:
  StageStrategy ComputeStrategy() override;
  void Update(int, int, const StageStrategy&) override {}
  void Restart() override {}
};

struct StageRecord {
  int a = 0;
  int b = 0;
  double payoff = 0.0;  // unweighted M(k, l, a, b)
};

struct EpisodeRecord {
  long episode = 0;
  std::uint64_t seed = 0;
  int k = 0;
  int l = 0;
  std::vector<StageRecord> stages;
  double total = 0.0;  // finite sum, or sum of lambda (1 - lambda)^(t-1) M
};

struct SimulationConfig {
  int stages = 1;
  std::optional<double> discount;
  long episodes = 1;
  std::uint64_t seed = 0;
  int batches = 1;
  bool keep_records = true;
};

struct SimulationSummary {
  long episodes = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double std_error = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<double> batch_means;
};

struct SimulationResult {
  SimulationSummary summary;
  std::vector<EpisodeRecord> records;
};

// Stage weight of stage t (1-based): 1 for finite games, lambda (1 -
// lambda)^(t-1) when discounted.
double StageWeight(const std::optional<double>& discount, int stage);

// Plays `config.episodes` independent episodes. Episode e uses the seed
// `SplitMix64(config.seed) ^ e`, split into streams for the type draw and
// each agent. Hashing first keeps nearby seeds from reusing the same
// episode seeds in a different order.
SimulationResult RunEpisodes(const GameSpec& game, Agent& agent1, Agent& agent2,
                             const SimulationConfig& config);

SimulationSummary Summarize(const std::vector<double>& totals, int batches);

struct BestResponse {
  double value = 0.0;
  std::vector<double> stage0_payoffs;
};

// Exact value of the opponent's best response to a fixed plan (backward
// recursion), weighted by the opponent's prior from the game. Pass
// StageWeights::Discounted(lambda) for truncated discounted games.
BestResponse BestResponseValue(const GameSpec& game, const RealizationPlan& plan,
                               StageWeights weights = {});

// Queries the agent at every (type, history) node up to `horizon`.
BehaviorStrategy UnrollAgent(const GameSpec& game, const Agent& agent, int horizon,
                             int horizon_cap = kDefaultHorizonCap);

// Columns episode,seed,k,l,stage,a,b,stage_payoff,cumulative; stage_payoff is
// the raw M entry and cumulative the running weighted total.
void WriteEpisodeCsv(const std::vector<EpisodeRecord>& records,
                     const std::optional<double>& discount, std::ostream& out);
std::string SummaryJson(const SimulationSummary& summary);

}  // namespace rbsolve

#endif  // RBSOLVE_SIMULATOR_H_
