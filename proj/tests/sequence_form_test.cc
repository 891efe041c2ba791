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

#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.h"
#include "rbsolve/errors.h"
#include "rbsolve/sequence_form.h"
#include "rbsolve/simulator.h"
#include "test_util.h"

using namespace rbsolve;

TEST_CASE("jamming game value, both players") {
  const SecuritySolution s1 = SolvePrimal(Jamming(), 2, Player::kOne);
  const SecuritySolution s2 = SolvePrimal(Jamming(), 2, Player::kTwo);
  CHECK(std::abs(s1.game_value - 162.49) <= 0.05);
  CHECK(std::abs(s2.game_value - 162.49) <= 0.05);
  CHECK(std::abs(s1.game_value - s2.game_value) < 1e-6);
}

TEST_CASE("jamming security payoffs per opponent type") {
  const SecuritySolution s1 = SolvePrimal(Jamming(), 2, Player::kOne);
  const SecuritySolution s2 = SolvePrimal(Jamming(), 2, Player::kTwo);
  // u0 has one entry per player-2 type, w0 one per player-1 type.
  REQUIRE(s1.stage0_payoffs.size() == 2);
  REQUIRE(s2.stage0_payoffs.size() == 3);
  const double u_expected[] = {145.45, 179.53};
  const double w_expected[] = {234.77, 141.44, 13.38};
  for (int l = 0; l < 2; ++l) CHECK(std::abs(s1.stage0_payoffs[l] - u_expected[l]) <= 0.05);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(s2.stage0_payoffs[k] - w_expected[k]) <= 0.05);

  const SecurityPayoffs u = WeightedSecurityPayoffs(Jamming(), s1.plan);
  for (int l = 0; l < 2; ++l) CHECK(u.stage0[l] == doctest::Approx(s1.stage0_payoffs[l]));
}

TEST_CASE("jamming player 2 stage-1 strategy is unique") {
  const SecuritySolution s2 = SolvePrimal(Jamming(), 2, Player::kTwo);
  CHECK(std::abs(s2.strategy.probs.At(1, 0, 0, 0) - 0.068) <= 0.02);
  CHECK(std::abs(s2.strategy.probs.At(1, 1, 0, 0) - 1.0) <= 0.02);
}

TEST_CASE("single action game sums stage payoffs") {
  const GameSpec g = ConstantGame(2.5);
  CHECK(SolvePrimal(g, 3, Player::kOne).game_value == doctest::Approx(7.5));
  CHECK(SolvePrimal(g, 3, Player::kTwo).game_value == doctest::Approx(7.5));
}

TEST_CASE("zero payoff tensor has value zero and zero security payoffs") {
  const GameSpec g = ConstantGame(0.0, 2, 3, 2, 2);
  const SecuritySolution s1 = SolvePrimal(g, 2, Player::kOne);
  const SecuritySolution s2 = SolvePrimal(g, 2, Player::kTwo);
  CHECK(s1.game_value == doctest::Approx(0.0));
  CHECK(s2.game_value == doctest::Approx(0.0));
  for (double u : s1.stage0_payoffs) CHECK(u == doctest::Approx(0.0));
  for (double w : s2.stage0_payoffs) CHECK(w == doctest::Approx(0.0));
}

TEST_CASE("one-stage value equals the type-contingent matrix game") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 15; ++trial) {
    const GameSpec g = oracle::RandomGame(rng, 2, 2, 2, 2);
    const double expected = oracle::MatrixGameValueBySupports(oracle::NormalForm(g, 1));
    CAPTURE(trial);
    CHECK(SolvePrimal(g, 1, Player::kOne).game_value == doctest::Approx(expected).epsilon(1e-8));
    CHECK(SolvePrimal(g, 1, Player::kTwo).game_value == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("two-stage value equals the normal-form game") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 8; ++trial) {
    const GameSpec g = oracle::RandomGame(rng, 2, 2, 2, 2);
    const oracle::Matrix nf = oracle::NormalForm(g, 2);
    CHECK(nf.size() == 64);
    const auto cert = oracle::MatrixGameValueCertified(nf);
    REQUIRE(cert.upper - cert.lower < 1e-7);
    CAPTURE(trial);
    CHECK(std::abs(SolvePrimal(g, 2, Player::kOne).game_value - cert.lower) < 1e-6);
    CHECK(std::abs(SolvePrimal(g, 2, Player::kTwo).game_value - cert.lower) < 1e-6);
  }
}

TEST_CASE("single-type game repeats the matrix-game mix") {
  std::mt19937_64 rng(303);
  const GameSpec g = oracle::RandomGame(rng, 1, 1, 3, 3);
  oracle::Matrix a(3, std::vector<double>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a[i][j] = g.M(0, 0, i, j);
  }
  const double v = oracle::MatrixGameValueBySupports(a);
  const SecuritySolution s = SolvePrimal(g, 2, Player::kOne);
  CHECK(s.game_value == doctest::Approx(2 * v));
  // Stage 1 guarantees v; after any opponent first action b, stage 1 plus
  // the worst stage-2 column still guarantees 2v.
  const auto& probs = s.strategy.probs;
  const auto& index = probs.index();
  for (int b = 0; b < 3; ++b) {
    double total = 0.0;
    for (int a1 = 0; a1 < 3; ++a1) {
      const double x = probs.At(1, 0, 0, a1);
      total += x * a[a1][b];
      const int h = index.Child(0, a1, b);
      double worst = 1e300;
      for (int j = 0; j < 3; ++j) {
        double pay = 0.0;
        for (int i = 0; i < 3; ++i) pay += probs.At(2, 0, h, i) * a[i][j];
        worst = std::min(worst, pay);
      }
      total += x * worst;
    }
    CHECK(total >= 2 * v - 1e-7);
  }
  for (int j = 0; j < 3; ++j) {
    double pay = 0.0;
    for (int i = 0; i < 3; ++i) pay += probs.At(1, 0, 0, i) * a[i][j];
    CHECK(pay >= v - 1e-7);
  }
}

TEST_CASE("optimal plans satisfy flow conservation and nonnegativity") {
  std::mt19937_64 rng(404);
  const GameSpec g = oracle::RandomGame(rng, 3, 2, 3, 2);
  for (Player p : {Player::kOne, Player::kTwo}) {
    const SecuritySolution s = SolvePrimal(g, 2, p);
    CHECK(s.plan.MaxFlowViolation() < 1e-9);
    const auto& w = s.plan.weights;
    for (int t = 1; t <= 2; ++t) {
      for (int k = 0; k < w.num_types(); ++k) {
        for (int h = 0; h < w.index().Count(t); ++h) {
          for (int a = 0; a < w.num_actions(); ++a) CHECK(w.At(t, k, h, a) >= 0.0);
        }
      }
    }
  }
}

TEST_CASE("behavior strategy and realization plan round trip") {
  std::mt19937_64 rng(505);
  const GameSpec g = oracle::RandomGame(rng, 2, 3, 3, 2);
  const SecuritySolution s = SolvePrimal(g, 2, Player::kTwo);
  const RealizationPlan plan = ToRealizationPlan(s.strategy, g.q0);
  CHECK(plan.MaxFlowViolation() < 1e-12);
  const BehaviorStrategy back = ToBehaviorStrategy(plan);
  for (int t = 1; t <= 2; ++t) {
    for (int l = 0; l < 3; ++l) {
      for (int h = 0; h < plan.weights.index().Count(t); ++h) {
        for (int b = 0; b < 2; ++b) {
          CHECK(back.probs.At(t, l, h, b) == doctest::Approx(s.strategy.probs.At(t, l, h, b)));
        }
      }
    }
  }
}

TEST_CASE("zero-weight histories get the uniform mix") {
  const GameSpec& g = Jamming();
  BehaviorStrategy pure = UniformStrategy(g, Player::kOne, 2);
  for (int k = 0; k < 3; ++k) {
    pure.probs.At(1, k, 0, 0) = 1.0;
    pure.probs.At(1, k, 0, 1) = 0.0;
  }
  const BehaviorStrategy back = ToBehaviorStrategy(ToRealizationPlan(pure, g.p0));
  // Stage-2 histories after action 2 were never reached.
  const int unreached = EnumerateHistories(g, 2).Child(0, 1, 0);
  CHECK(back.probs.At(2, 0, unreached, 0) == doctest::Approx(0.5));
}

TEST_CASE("security payoffs match brute-force best responses") {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const GameSpec g = oracle::RandomGame(rng, 2, 2, 2, 2);
    for (Player owner : {Player::kOne, Player::kTwo}) {
      BehaviorStrategy s = UniformStrategy(g, owner, 2);
      auto& probs = s.probs;
      for (int t = 1; t <= 2; ++t) {
        for (int i = 0; i < probs.num_types(); ++i) {
          for (int h = 0; h < probs.index().Count(t); ++h) {
            const double x = u(rng);
            probs.At(t, i, h, 0) = x / (x + 1.0);
            probs.At(t, i, h, 1) = 1.0 / (x + 1.0);
          }
        }
      }
      const RealizationPlan plan =
          ToRealizationPlan(s, owner == Player::kOne ? g.p0 : g.q0);
      const SecurityPayoffs payoffs = WeightedSecurityPayoffs(g, plan);
      const std::vector<double> brute = oracle::BruteForceBestResponse(g, s);
      CAPTURE(trial);
      for (std::size_t j = 0; j < brute.size(); ++j) {
        CHECK(payoffs.stage0[j] == doctest::Approx(brute[j]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("strategy CSV round trip and validation") {
  const GameSpec& g = Jamming();
  const SecuritySolution s = SolvePrimal(g, 2, Player::kOne);
  std::stringstream buffer;
  WriteStrategyCsv(s.strategy, buffer);
  const BehaviorStrategy back = ReadStrategyCsv(buffer, g, Player::kOne);
  CHECK(back.horizon() == 2);
  for (int k = 0; k < 3; ++k) {
    CHECK(back.probs.At(1, k, 0, 0) == doctest::Approx(s.strategy.probs.At(1, k, 0, 0)));
  }

  std::stringstream missing("stage,type,history_a,history_b,action,probability\n"
                            "1,0,,,0,1\n");
  CHECK_THROWS_AS(ReadStrategyCsv(missing, g, Player::kOne), InputError);
  std::stringstream bad_sum("stage,type,history_a,history_b,action,probability\n"
                            "1,0,,,0,0.5\n1,0,,,1,0.2\n1,1,,,0,1\n1,1,,,1,0\n"
                            "1,2,,,0,1\n1,2,,,1,0\n");
  CHECK_THROWS_AS(ReadStrategyCsv(bad_sum, g, Player::kOne), InputError);
}

TEST_CASE("horizon beyond the cap is a capacity error") {
  CHECK_THROWS_AS(SolvePrimal(Jamming(), 7, Player::kOne), CapacityError);
  CHECK_THROWS_AS(SolvePrimal(Jamming(), 3, Player::kOne, {}, 2), CapacityError);
}

TEST_CASE("primal LP dimensions") {
  const LpProblem lp = BuildPrimalLpP1(Jamming(), 2);
  // Plan columns 3*(2 + 4*2), u columns 2*4, stage-0 columns 2.
  CHECK(lp.num_variables() == 30 + 8 + 2);
}
