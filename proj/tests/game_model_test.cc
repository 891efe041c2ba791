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

#include <string>

#include "doctest.h"
#include "rbsolve/errors.h"
#include "rbsolve/game_model.h"
#include "test_util.h"

using namespace rbsolve;

namespace {

std::string TinyGame(const std::string& p0, const std::string& q0) {
  return R"({"k_types":["k1","k2"],"l_types":["l1","l2"],"a_actions":["a1"],)"
         R"("b_actions":["b1"],"payoff":[[[[1]],[[2]]],[[[3]],[[4]]]],"p0":)" +
         p0 + R"(,"q0":)" + q0 + "}";
}

}  // namespace

TEST_CASE("jamming case-study file") {
  const GameSpec& g = Jamming();
  CHECK(g.num_k() == 3);
  CHECK(g.num_l() == 2);
  CHECK(g.num_a() == 2);
  CHECK(g.num_b() == 2);
  CHECK(g.p0 == std::vector<double>{0.5, 0.3, 0.2});
  CHECK(g.q0 == std::vector<double>{0.5, 0.5});
  CHECK(PayoffAt(g, 1, 0, 0, 0) == doctest::Approx(11.48));
  CHECK(PayoffAt(g, 0, 1, 1, 1) == doctest::Approx(154.40));
  CHECK(g.MaxAbsPayoff() == doctest::Approx(154.40));
}

TEST_CASE("serialization round trip") {
  const GameSpec& g = Jamming();
  CHECK(LoadGame(SerializeGame(g)) == g);
}

TEST_CASE("prior validation") {
  CHECK_NOTHROW(LoadGame(TinyGame("[0.5,0.5]", "[0.4,0.6]")));
  CHECK_THROWS_WITH_AS(LoadGame(TinyGame("[0.5,0.5]", "[0.6,0.6]")), "q0 must sum to 1",
                       InputError);
  CHECK_THROWS_WITH_AS(LoadGame(TinyGame("[1,0]", "[0.5,0.5]")), "p0 entries must be positive",
                       InputError);
  CHECK_THROWS_AS(LoadGame(TinyGame("[1]", "[0.5,0.5]")), InputError);
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(LoadGame("{"), InputError);
  CHECK_THROWS_AS(LoadGame("[]"), InputError);
  CHECK_THROWS_AS(LoadGame(R"({"k_types":["k"],"l_types":["l"],"a_actions":["a"],)"
                           R"("b_actions":["b"],"payoff":[[[1]]],"p0":[1],"q0":[1]})"),
                  InputError);
  CHECK_THROWS_AS(LoadGameFile("/nonexistent/game.json"), InputError);
  CHECK_THROWS_AS(PayoffAt(Jamming(), 3, 0, 0, 0), InputError);
}

TEST_CASE("zero payoff tensor") {
  const GameSpec g = ConstantGame(0.0, 2, 2, 2, 2);
  for (int k = 0; k < 2; ++k) CHECK(PayoffAt(g, k, 1, 1, 0) == 0.0);
}

TEST_CASE("history counts and ordering") {
  const HistoryIndex two(2, 2, 3);
  CHECK(two.Count(1) == 1);
  CHECK(two.Count(3) == 16);
  CHECK(two.TotalNodes() == 21);
  CHECK(two.Pair(1, 0) == HistoryPair{});

  const HistoryIndex idx(3, 2, 2);
  REQUIRE(idx.Count(2) == 6);
  const int expected[6][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}};
  for (int h = 0; h < 6; ++h) {
    const HistoryPair pair = idx.Pair(2, h);
    CHECK(pair.a_seq == std::vector<int>{expected[h][0]});
    CHECK(pair.b_seq == std::vector<int>{expected[h][1]});
    CHECK(idx.Index(pair) == h);
  }
}

TEST_CASE("child and parent round trip") {
  const HistoryIndex idx(3, 2, 4);
  for (int t = 1; t < 4; ++t) {
    for (int h = 0; h < idx.Count(t); ++h) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 2; ++b) {
          const int c = idx.Child(h, a, b);
          CHECK(c < idx.Count(t + 1));
          CHECK(idx.Parent(c) == h);
          CHECK(idx.LastA(c) == a);
          CHECK(idx.LastB(c) == b);
        }
      }
    }
  }
}

TEST_CASE("horizon cap") {
  CHECK_THROWS_AS(HistoryIndex(2, 2, 7), CapacityError);
  CHECK_NOTHROW(HistoryIndex(2, 2, 6));
  CHECK_THROWS_AS(HistoryIndex(2, 2, 0), InputError);
  CHECK_THROWS_AS(EnumerateHistories(Jamming(), 3, 2), CapacityError);
}

TEST_CASE("belief validation") {
  CHECK_NOTHROW(ValidateBelief({Player::kOne, {0.25, 0.75}}));
  CHECK_THROWS_AS(ValidateBelief({Player::kOne, {0.25, 0.70}}), InputError);
  CHECK_THROWS_AS(ValidateBelief({Player::kOne, {-0.25, 1.25}}), InputError);
}
