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

#include "rbsolve/agent.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rbsolve/errors.h"

namespace rbsolve {

double MaxSimplexViolation(const StageStrategy& strategy) {
  double worst = 0.0;
  for (const auto& row : strategy.rows) {
    double total = 0.0;
    for (double x : row) {
      worst = std::max(worst, -x);
      total += x;
    }
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return worst;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Agent::Agent(const GameSpec& game, Player player, std::optional<int> horizon)
    : game_(game), player_(player), horizon_(horizon), rng_(SplitMix64(0)) {
  if (horizon_ && *horizon_ < 1) throw InputError("agent horizon must be at least 1");
}

void Agent::Reset(std::uint64_t seed) {
  stage_ = 1;
  current_.reset();
  rng_.seed(SplitMix64(seed));
  Restart();
}

const StageStrategy& Agent::Strategy() {
  if (terminal()) {
    throw ProtocolError("agent asked to act at stage " + std::to_string(stage_) +
                        " past its horizon " + std::to_string(*horizon_));
  }
  if (!current_) current_ = ComputeStrategy();
  return *current_;
}

int Agent::Act(int type) {
  const StageStrategy& s = Strategy();
  if (type < 0 || type >= s.num_types()) throw InputError("agent type out of range");
  const auto& row = s.rows[type];
  std::discrete_distribution<int> pick(row.begin(), row.end());
  return pick(rng_);
}

void Agent::Observe(int a, int b) {
  if (terminal()) {
    throw ProtocolError("observe after the final stage " + std::to_string(*horizon_));
  }
  if (!current_) {
    throw ProtocolError("observe before act at stage " + std::to_string(stage_));
  }
  if (a < 0 || a >= game_.num_a() || b < 0 || b >= game_.num_b()) {
    throw InputError("observed action out of range");
  }
  const StageStrategy played = std::move(*current_);
  current_.reset();
  Update(a, b, played);
  ++stage_;
}

}  // namespace rbsolve
