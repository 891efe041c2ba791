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

#ifndef RBSOLVE_AGENT_H_
#define RBSOLVE_AGENT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "rbsolve/game_model.h"

namespace rbsolve {

// One distribution over the owner's actions per own type (r or z).
struct StageStrategy {
  Player owner = Player::kOne;
  std::vector<std::vector<double>> rows;

  int num_types() const { return static_cast<int>(rows.size()); }
};

// Largest deviation of any row from a probability distribution.
double MaxSimplexViolation(const StageStrategy& strategy);

std::uint64_t SplitMix64(std::uint64_t x);

// A stateful strategy for one player. Each stage the caller obtains the
// stage strategy (Strategy or Act), then reports the realized action pair
// through Observe. Finite agents become terminal after `horizon` stages.
class Agent {
 public:
  Agent(const GameSpec& game, Player player, std::optional<int> horizon);
  virtual ~Agent() = default;

  Player player() const { return player_; }
  const GameSpec& game() const { return game_; }
  int stage() const { return stage_; }
  std::optional<int> horizon() const { return horizon_; }
  bool terminal() const { return horizon_ && stage_ > *horizon_; }

  // Back to stage 1 with a fresh sampling stream.
  void Reset(std::uint64_t seed);

  // Stage strategy for the current stage; computed once per stage.
  const StageStrategy& Strategy();
  // Samples an action for `type` from the current stage strategy.
  int Act(int type);
  // Advances to the next stage. Throws ProtocolError when no stage
  // strategy was requested this stage or the agent is terminal.
  void Observe(int a, int b);

  virtual std::unique_ptr<Agent> Clone() const = 0;

 protected:
  virtual StageStrategy ComputeStrategy() = 0;
  virtual void Update(int a, int b, const StageStrategy& played) = 0;
  virtual void Restart() = 0;


 private:
  GameSpec game_;
  Player player_;
  std::optional<int> horizon_;
  int stage_ = 1;
  std::optional<StageStrategy> current_;
  std::mt19937_64 rng_;
};

}  // namespace rbsolve

#endif  // RBSOLVE_AGENT_H_
