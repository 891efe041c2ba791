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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.h"
#include "rbsolve/dual_games.h"
#include "rbsolve/errors.h"
#include "rbsolve/simulator.h"
#include "test_util.h"

using namespace rbsolve;

namespace {

// Always plays action `action`.
BehaviorStrategy Pure(const GameSpec& g, Player owner, int horizon, int action) {
  BehaviorStrategy s = UniformStrategy(g, owner, horizon);
  auto& probs = s.probs;
  for (int t = 1; t <= horizon; ++t) {
    for (int i = 0; i < probs.num_types(); ++i) {
      for (int h = 0; h < probs.index().Count(t); ++h) {
        for (int a = 0; a < probs.num_actions(); ++a) probs.At(t, i, h, a) = a == action;
      }
    }
  }
  return s;
}

}  // namespace

TEST_CASE("stage weights") {
  CHECK(StageWeight(std::nullopt, 4) == 1.0);
  CHECK(StageWeight(0.7, 1) == doctest::Approx(0.7));
  CHECK(StageWeight(0.7, 3) == doctest::Approx(0.7 * 0.09));
}

TEST_CASE("forced play yields the forced payoff sum") {
  const GameSpec& g = Jamming();
  BehaviorStrategyAgent p1(g, Pure(g, Player::kOne, 2, 1));
  BehaviorStrategyAgent p2(g, Pure(g, Player::kTwo, 2, 0));
  SimulationConfig config;
  config.stages = 2;
  config.episodes = 400;
  config.seed = 8;
  const SimulationResult r = RunEpisodes(g, p1, p2, config);
  for (const EpisodeRecord& e : r.records) {
    CHECK(e.total == doctest::Approx(2 * g.M(e.k, e.l, 1, 0)));
    for (const StageRecord& s : e.stages) {
      CHECK(s.a == 1);
      CHECK(s.b == 0);
    }
  }
  CHECK(r.summary.min <= r.summary.mean);
  CHECK(r.summary.mean <= r.summary.max);
}

TEST_CASE("identical seeds give identical episodes") {
  const GameSpec& g = Jamming();
  auto a1 = MakeAgentP1(g, 2);
  auto a2 = MakeAgentP2(g, 2);
  SimulationConfig config;
  config.stages = 2;
  config.episodes = 50;
  config.seed = 1234;
  const SimulationResult x = RunEpisodes(g, *a1, *a2, config);
  const SimulationResult y = RunEpisodes(g, *a1, *a2, config);
  REQUIRE(x.records.size() == y.records.size());
  for (std::size_t i = 0; i < x.records.size(); ++i) {
    CHECK(x.records[i].k == y.records[i].k);
    CHECK(x.records[i].l == y.records[i].l);
    CHECK(x.records[i].total == y.records[i].total);
  }
  config.seed = 1235;
  const SimulationResult z = RunEpisodes(g, *a1, *a2, config);
  bool differs = false;
  for (std::size_t i = 0; i < z.records.size(); ++i) {
    differs = differs || z.records[i].total != x.records[i].total;
  }
  CHECK(differs);
}

TEST_CASE("episode totals match their stage payoffs") {
  const GameSpec& g = Jamming();
  UniformAgent a1(g, Player::kOne);
  GreedyAgent a2(g, Player::kTwo);
  SimulationConfig config;
  config.stages = 5;
  config.discount = 0.6;
  config.episodes = 30;
  const SimulationResult r = RunEpisodes(g, a1, a2, config);
  for (const EpisodeRecord& e : r.records) {
    double total = 0.0;
    for (std::size_t t = 0; t < e.stages.size(); ++t) {
      total += StageWeight(config.discount, static_cast<int>(t) + 1) * e.stages[t].payoff;
      CHECK(e.stages[t].payoff == g.M(e.k, e.l, e.stages[t].a, e.stages[t].b));
    }
    CHECK(std::abs(total - e.total) < 1e-9);
  }
}

TEST_CASE("type frequencies follow the priors") {
  const GameSpec& g = Jamming();
  UniformAgent a1(g, Player::kOne);
  UniformAgent a2(g, Player::kTwo);
  SimulationConfig config;
  config.episodes = 6000;
  config.seed = 5;
  const SimulationResult r = RunEpisodes(g, a1, a2, config);
  std::vector<double> k_count(3, 0.0);
  for (const EpisodeRecord& e : r.records) k_count[e.k] += 1.0;
  for (int k = 0; k < 3; ++k) {
    const double p = g.p0[k];
    const double se = std::sqrt(p * (1 - p) / 6000.0);
    CHECK(std::abs(k_count[k] / 6000.0 - p) < 5 * se);
  }
}

TEST_CASE("summary statistics") {
  const SimulationSummary s = Summarize({1.0, 2.0, 3.0, 4.0}, 2);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
  CHECK(s.batch_means == std::vector<double>{1.5, 3.5});
  const auto j = nlohmann::json::parse(SummaryJson(s));
  CHECK(j.at("mean").get<double>() == 2.5);
}

TEST_CASE("episode CSV") {
  const GameSpec& g = Jamming();
  BehaviorStrategyAgent p1(g, Pure(g, Player::kOne, 1, 0));
  BehaviorStrategyAgent p2(g, Pure(g, Player::kTwo, 1, 1));
  SimulationConfig config;
  config.episodes = 2;
  const SimulationResult r = RunEpisodes(g, p1, p2, config);
  std::ostringstream out;
  WriteEpisodeCsv(r.records, std::nullopt, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "episode,seed,k,l,stage,a,b,stage_payoff,cumulative");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("best response of the optimal plan is the game value") {
  const GameSpec& g = Jamming();
  const SecuritySolution s1 = SolvePrimal(g, 2, Player::kOne);
  const SecuritySolution s2 = SolvePrimal(g, 2, Player::kTwo);
  CHECK(std::abs(BestResponseValue(g, s1.plan).value - 162.49) <= 0.05);
  CHECK(BestResponseValue(g, s1.plan).value == doctest::Approx(s1.game_value).epsilon(1e-10));
  CHECK(BestResponseValue(g, s2.plan).value == doctest::Approx(s2.game_value).epsilon(1e-10));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    const GameSpec r = oracle::RandomGame(rng, 3, 2, 2, 3);
    const SecuritySolution x = SolvePrimal(r, 2, Player::kOne);
    CHECK(std::abs(BestResponseValue(r, x.plan).value - x.game_value) < 1e-6);
  }
}

TEST_CASE("uniform plan in a constant game") {
  const GameSpec g = ConstantGame(3.0, 2, 2, 2, 2);
  const RealizationPlan plan = ToRealizationPlan(UniformStrategy(g, Player::kOne, 3), g.p0);
  CHECK(BestResponseValue(g, plan).value == doctest::Approx(9.0));
}

TEST_CASE("best response agrees with brute force") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GameSpec g = oracle::RandomGame(rng, 2, 3, 2, 2);
  BehaviorStrategy s = UniformStrategy(g, Player::kTwo, 2);
  for (int t = 1; t <= 2; ++t) {
    for (int l = 0; l < 3; ++l) {
      for (int h = 0; h < s.probs.index().Count(t); ++h) {
        const double x = u(rng);
        s.probs.At(t, l, h, 0) = x;
        s.probs.At(t, l, h, 1) = 1.0 - x;
      }
    }
  }
  const BestResponse br = BestResponseValue(g, ToRealizationPlan(s, g.q0));
  const std::vector<double> brute = oracle::BruteForceBestResponse(g, s);
  double value = 0.0;
  for (int k = 0; k < 2; ++k) {
    CHECK(br.stage0_payoffs[k] == doctest::Approx(brute[k]).epsilon(1e-10));
    value += g.p0[k] * brute[k];
  }
  CHECK(br.value == doctest::Approx(value).epsilon(1e-10));
}

TEST_CASE("unrolling") {
  const GameSpec& g = Jamming();
  auto agent = MakeAgentP1(g, 1);
  const BehaviorStrategy one = UnrollAgent(g, *agent, 1);
  agent->Reset(0);
  const StageStrategy& mix = agent->Strategy();
  for (int k = 0; k < 3; ++k) {
    for (int a = 0; a < 2; ++a) CHECK(one.probs.At(1, k, 0, a) == doctest::Approx(mix.rows[k][a]));
  }

  auto two = MakeAgentP2(g, 2);
  const RealizationPlan plan = ToRealizationPlan(UnrollAgent(g, *two, 2), g.q0);
  CHECK(plan.MaxFlowViolation() < 1e-12);

  const SecuritySolution s = SolvePrimal(g, 2, Player::kOne);
  BehaviorStrategyAgent fixed(g, s.strategy);
  const BehaviorStrategy back = UnrollAgent(g, fixed, 2);
  CHECK(BestResponseValue(g, ToRealizationPlan(back, g.p0)).value ==
        doctest::Approx(s.game_value).epsilon(1e-10));
}

TEST_CASE("sequence-form strategy holds its security level against a fixed suite") {
  const GameSpec& g = Jamming();
  const SecuritySolution s1 = SolvePrimal(g, 2, Player::kOne);
  const SecuritySolution s2 = SolvePrimal(g, 2, Player::kTwo);
  SimulationConfig config;
  config.stages = 2;
  config.episodes = 2000;
  config.seed = 77;
  config.keep_records = false;
  std::vector<std::unique_ptr<Agent>> p2_suite;
  p2_suite.push_back(std::make_unique<UniformAgent>(g, Player::kTwo));
  p2_suite.push_back(std::make_unique<GreedyAgent>(g, Player::kTwo));
  p2_suite.push_back(std::make_unique<RevealingAgent>(g, Player::kTwo));
  for (auto& opponent : p2_suite) {
    BehaviorStrategyAgent me(g, s1.strategy);
    const SimulationSummary r = RunEpisodes(g, me, *opponent, config).summary;
    CHECK(r.mean >= s1.game_value - 4 * r.std_error);
  }
  std::vector<std::unique_ptr<Agent>> p1_suite;
  p1_suite.push_back(std::make_unique<UniformAgent>(g, Player::kOne));
  p1_suite.push_back(std::make_unique<GreedyAgent>(g, Player::kOne));
  p1_suite.push_back(std::make_unique<RevealingAgent>(g, Player::kOne));
  for (auto& opponent : p1_suite) {
    BehaviorStrategyAgent me(g, s2.strategy);
    const SimulationSummary r = RunEpisodes(g, *opponent, me, config).summary;
    CHECK(r.mean <= s2.game_value + 4 * r.std_error);
  }
}

TEST_CASE("agents for the wrong seat are rejected") {
  const GameSpec& g = Jamming();
  UniformAgent a(g, Player::kTwo);
  UniformAgent b(g, Player::kTwo);
  SimulationConfig config;
  CHECK_THROWS_AS(RunEpisodes(g, a, b, config), InputError);
  UniformAgent c(g, Player::kOne);
  config.episodes = 0;
  CHECK_THROWS_AS(RunEpisodes(g, c, b, config), InputError);
}

TEST_CASE("agent horizon shorter than the episode is rejected") {
  const GameSpec& g = Jamming();
  auto a1 = MakeAgentP1(g, 1);
  UniformAgent a2(g, Player::kTwo);
  SimulationConfig config;
  config.stages = 2;
  CHECK_THROWS_AS(RunEpisodes(g, *a1, a2, config), InputError);
}

TEST_CASE("observing without a stage strategy is a protocol error") {
  const GameSpec& g = Jamming();
  UniformAgent a(g, Player::kOne, 2);
  a.Reset(1);
  CHECK_THROWS_AS(a.Observe(0, 0), ProtocolError);
  a.Act(0);
  a.Observe(0, 0);
  a.Act(1);
  a.Observe(1, 1);
  CHECK(a.terminal());
  CHECK_THROWS_AS(a.Act(0), ProtocolError);
}

TEST_CASE("nearby seeds do not share episodes") {
  const GameSpec& g = Jamming();
  UniformAgent a1(g, Player::kOne);
  UniformAgent a2(g, Player::kTwo);
  SimulationConfig config;
  config.stages = 3;
  config.episodes = 64;
  config.seed = 2;
  const SimulationSummary x = RunEpisodes(g, a1, a2, config).summary;
  config.seed = 7;
  const SimulationSummary y = RunEpisodes(g, a1, a2, config).summary;
  CHECK(x.mean != y.mean);
}
