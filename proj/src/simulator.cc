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

#include "rbsolve/simulator.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"
#include "rbsolve/errors.h"

namespace rbsolve {
namespace {

constexpr std::uint64_t kTypeStream = 0x54595045ULL;
constexpr std::uint64_t kAgent1Stream = 0xA1A1A1A1ULL;
constexpr std::uint64_t kAgent2Stream = 0xB2B2B2B2ULL;

int OwnTypes(const GameSpec& game, Player p) {
  return p == Player::kOne ? game.num_k() : game.num_l();
}
int OwnActions(const GameSpec& game, Player p) {
  return p == Player::kOne ? game.num_a() : game.num_b();
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double Total() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

StageStrategy PureStrategy(Player owner, const std::vector<int>& choice, int actions) {
  StageStrategy s{owner, {}};
  for (int c : choice) {
    std::vector<double> row(actions, 0.0);
    row[c] = 1.0;
    s.rows.push_back(std::move(row));
  }
  return s;
}

}  // namespace

BehaviorStrategyAgent::BehaviorStrategyAgent(const GameSpec& game, BehaviorStrategy strategy)
    : Agent(game, strategy.owner(), strategy.horizon()), strategy_(std::move(strategy)) {
  const StageTensor& s = strategy_.probs;
  if (s.num_types() != OwnTypes(game, s.owner()) || s.num_actions() != OwnActions(game, s.owner()) ||
      s.index().num_a() != game.num_a() || s.index().num_b() != game.num_b()) {
    throw InputError("behavior strategy does not match the game dimensions");
  }
}

std::unique_ptr<Agent> BehaviorStrategyAgent::Clone() const {
  return std::make_unique<BehaviorStrategyAgent>(*this);
}

StageStrategy BehaviorStrategyAgent::ComputeStrategy() {
  StageStrategy s{player(), {}};
  for (int type = 0; type < strategy_.probs.num_types(); ++type) {
    s.rows.push_back(strategy_.Mix(stage(), type, history_));
  }
  return s;
}

void BehaviorStrategyAgent::Update(int a, int b, const StageStrategy&) {
  if (stage() < strategy_.horizon()) history_ = strategy_.probs.index().Child(history_, a, b);
}

UniformAgent::UniformAgent(const GameSpec& game, Player player, std::optional<int> horizon)
    : Agent(game, player, horizon) {}

std::unique_ptr<Agent> UniformAgent::Clone() const { return std::make_unique<UniformAgent>(*this); }

StageStrategy UniformAgent::ComputeStrategy() {
  const int actions = OwnActions(game(), player());
  return StageStrategy{player(), std::vector<std::vector<double>>(
                                     OwnTypes(game(), player()),
                                     std::vector<double>(actions, 1.0 / actions))};
}

GreedyAgent::GreedyAgent(const GameSpec& game, Player player, std::optional<int> horizon)
    : Agent(game, player, horizon) {}

std::unique_ptr<Agent> GreedyAgent::Clone() const { return std::make_unique<GreedyAgent>(*this); }

StageStrategy GreedyAgent::ComputeStrategy() {
  const GameSpec& g = game();
  const bool p1 = player() == Player::kOne;
  std::vector<int> choice;
  for (int type = 0; type < OwnTypes(g, player()); ++type) {
    int best_action = 0;
    double best = 0.0;
    for (int m = 0; m < OwnActions(g, player()); ++m) {
      double value = 0.0;
      if (p1) {
        for (int l = 0; l < g.num_l(); ++l) {
          for (int b = 0; b < g.num_b(); ++b) value += g.q0[l] * g.M(type, l, m, b) / g.num_b();
        }
      } else {
        for (int k = 0; k < g.num_k(); ++k) {
          for (int a = 0; a < g.num_a(); ++a) value += g.p0[k] * g.M(k, type, a, m) / g.num_a();
        }
      }
      if (m == 0 || (p1 ? value > best : value < best)) {
        best = value;
        best_action = m;
      }
    }
    choice.push_back(best_action);
  }
  return PureStrategy(player(), choice, OwnActions(g, player()));
}

RevealingAgent::RevealingAgent(const GameSpec& game, Player player, std::optional<int> horizon)
    : Agent(game, player, horizon) {}

std::unique_ptr<Agent> RevealingAgent::Clone() const {
  return std::make_unique<RevealingAgent>(*this);
}

StageStrategy RevealingAgent::ComputeStrategy() {
  const int actions = OwnActions(game(), player());
  std::vector<int> choice;
  for (int type = 0; type < OwnTypes(game(), player()); ++type) choice.push_back(type % actions);
  return PureStrategy(player(), choice, actions);
}

double StageWeight(const std::optional<double>& discount, int stage) {
  if (!discount) return 1.0;
  return *discount * std::pow(1.0 - *discount, stage - 1);
}

SimulationSummary Summarize(const std::vector<double>& totals, int batches) {
  if (totals.empty()) throw InputError("no episodes to summarize");
  if (batches < 1) throw InputError("batches must be at least 1");
  const long n = static_cast<long>(totals.size());
  SimulationSummary s;
  s.episodes = n;
  CompensatedSum sum;
  for (double x : totals) sum.Add(x);
  s.mean = sum.Total() / n;
  CompensatedSum squares;
  for (double x : totals) squares.Add((x - s.mean) * (x - s.mean));
  s.stddev = n > 1 ? std::sqrt(squares.Total() / (n - 1)) : 0.0;
  s.std_error = s.stddev / std::sqrt(static_cast<double>(n));
  const auto [lo, hi] = std::minmax_element(totals.begin(), totals.end());
  s.min = *lo;
  s.max = *hi;
  // Guard the mean against the last-bit drift of the division.
  s.mean = std::clamp(s.mean, s.min, s.max);
  const long used = std::min<long>(batches, n);
  long begin = 0;
  for (long i = 0; i < used; ++i) {
    const long end = begin + n / used + (i < n % used ? 1 : 0);
    CompensatedSum batch;
    for (long e = begin; e < end; ++e) batch.Add(totals[e]);
    s.batch_means.push_back(batch.Total() / (end - begin));
    begin = end;
  }
  return s;
}

SimulationResult RunEpisodes(const GameSpec& game, Agent& agent1, Agent& agent2,
                             const SimulationConfig& config) {
  if (config.episodes < 1) throw InputError("episodes must be at least 1");
  if (config.stages < 1) throw InputError("stages must be at least 1");
  if (agent1.player() != Player::kOne || agent2.player() != Player::kTwo) {
    throw InputError("agents must be ordered player 1, player 2");
  }
  for (const Agent* agent : {&agent1, &agent2}) {
    if (agent->horizon() && *agent->horizon() < config.stages) {
      throw InputError("agent horizon is shorter than the episode length");
    }
    if (agent->game().num_a() != game.num_a() || agent->game().num_b() != game.num_b()) {
      throw InputError("agent action sets do not match the game");
    }
  }
  if (config.discount && !(*config.discount > 0.0 && *config.discount < 1.0)) {
    throw InputError("discount must lie strictly inside (0, 1)");
  }

  SimulationResult result;
  std::vector<double> totals;
  totals.reserve(config.episodes);
  for (long e = 0; e < config.episodes; ++e) {
    EpisodeRecord record;
    record.episode = e;
    record.seed = SplitMix64(config.seed) ^ static_cast<std::uint64_t>(e);
    std::mt19937_64 rng(SplitMix64(record.seed ^ kTypeStream));
    std::discrete_distribution<int> draw_k(game.p0.begin(), game.p0.end());
    std::discrete_distribution<int> draw_l(game.q0.begin(), game.q0.end());
    record.k = draw_k(rng);
    record.l = draw_l(rng);
    agent1.Reset(record.seed ^ kAgent1Stream);
    agent2.Reset(record.seed ^ kAgent2Stream);
    CompensatedSum total;
    for (int t = 1; t <= config.stages; ++t) {
      try {
        const int a = agent1.Act(record.k);
        const int b = agent2.Act(record.l);
        agent1.Observe(a, b);
        agent2.Observe(a, b);
        const double payoff = game.M(record.k, record.l, a, b);
        record.stages.push_back({a, b, payoff});
        total.Add(StageWeight(config.discount, t) * payoff);
      } catch (const ProtocolError& err) {
        throw ProtocolError("episode " + std::to_string(e) + " stage " + std::to_string(t) +
                            ": " + err.what());
      }
    }
    record.total = total.Total();
    totals.push_back(record.total);
    if (config.keep_records) result.records.push_back(std::move(record));
  }
  result.summary = Summarize(totals, config.batches);
  return result;
}

BestResponse BestResponseValue(const GameSpec& game, const RealizationPlan& plan,
                               StageWeights weights) {
  const SecurityPayoffs payoffs = WeightedSecurityPayoffs(game, plan, weights);
  BestResponse out;
  out.value = payoffs.Value(plan.owner() == Player::kOne ? game.q0 : game.p0);
  out.stage0_payoffs = payoffs.stage0;
  return out;
}

BehaviorStrategy UnrollAgent(const GameSpec& game, const Agent& agent, int horizon,
                             int horizon_cap) {
  HistoryIndex index(game.num_a(), game.num_b(), horizon, horizon_cap);
  if (agent.horizon() && *agent.horizon() < horizon) {
    throw InputError("agent horizon is shorter than the unroll horizon");
  }
  const Player owner = agent.player();
  BehaviorStrategy out{StageTensor(owner, index, OwnTypes(game, owner), OwnActions(game, owner))};
  std::function<void(Agent&, int, int)> visit = [&](Agent& node, int t, int h) {
    const StageStrategy s = node.Strategy();
    for (int type = 0; type < out.probs.num_types(); ++type) {
      for (int m = 0; m < out.probs.num_actions(); ++m) {
        out.probs.At(t, type, h, m) = s.rows[type][m];
      }
    }
    if (t == horizon) return;
    for (int a = 0; a < game.num_a(); ++a) {
      for (int b = 0; b < game.num_b(); ++b) {
        std::unique_ptr<Agent> child = node.Clone();
        child->Observe(a, b);
        visit(*child, t + 1, index.Child(h, a, b));
      }
    }
  };
  std::unique_ptr<Agent> root = agent.Clone();
  root->Reset(0);
  visit(*root, 1, 0);
  return out;
}

void WriteEpisodeCsv(const std::vector<EpisodeRecord>& records,
                     const std::optional<double>& discount, std::ostream& out) {
  std::ostringstream buffer;
  buffer.precision(17);
  buffer << "episode,seed,k,l,stage,a,b,stage_payoff,cumulative\n";
  for (const EpisodeRecord& r : records) {
    double cumulative = 0.0;
    for (std::size_t i = 0; i < r.stages.size(); ++i) {
      const StageRecord& s = r.stages[i];
      const int t = static_cast<int>(i) + 1;
      cumulative += StageWeight(discount, t) * s.payoff;
      buffer << r.episode << ',' << r.seed << ',' << r.k << ',' << r.l << ',' << t << ','
             << s.a << ',' << s.b << ',' << s.payoff << ',' << cumulative << '\n';
    }
  }
  out << buffer.str();
}

std::string SummaryJson(const SimulationSummary& summary) {
  nlohmann::json j;
  j["episodes"] = summary.episodes;
  j["mean"] = summary.mean;
  j["stddev"] = summary.stddev;
  j["std_error"] = summary.std_error;
  j["min"] = summary.min;
  j["max"] = summary.max;
  j["batch_means"] = summary.batch_means;
  return j.dump(2);
}

}  // namespace rbsolve
