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

#ifndef RBSOLVE_GAME_MODEL_H_
#define RBSOLVE_GAME_MODEL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rbsolve {

enum class Player { kOne = 1, kTwo = 2 };

inline Player Opponent(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}

inline constexpr int kDefaultHorizonCap = 6;

// Two-player zero-sum repeated Bayesian game (K, L, A, B, M, p0, q0), with an
// optional discount factor. Player 1 (types K, actions A) maximizes.
struct GameSpec {
  std::vector<std::string> k_types;
  std::vector<std::string> l_types;
  std::vector<std::string> a_actions;
  std::vector<std::string> b_actions;
  std::vector<double> payoff;  // row-major [k][l][a][b]
  std::vector<double> p0;
  std::vector<double> q0;
  std::optional<double> discount;

  int num_k() const { return static_cast<int>(k_types.size()); }
  int num_l() const { return static_cast<int>(l_types.size()); }
  int num_a() const { return static_cast<int>(a_actions.size()); }
  int num_b() const { return static_cast<int>(b_actions.size()); }

  // Unchecked; see PayoffAt for the checked accessor.
  double M(int k, int l, int a, int b) const {
    return payoff[((static_cast<std::size_t>(k) * num_l() + l) * num_a() + a) * num_b() + b];
  }
  double MaxAbsPayoff() const;

  bool operator==(const GameSpec&) const = default;
};

// Builds a game with generated labels ("k0", "a1", ...). Validates.
GameSpec MakeGame(int num_k, int num_l, int num_a, int num_b,
                  std::vector<double> payoff, std::vector<double> p0,
                  std::vector<double> q0,
                  std::optional<double> discount = std::nullopt);

// Throws InputError naming the offending field and constraint.
void ValidateGame(const GameSpec& game);

// Parses and validates the JSON game document.
GameSpec LoadGame(std::string_view json_text);
GameSpec LoadGameFile(const std::string& path);
std::string SerializeGame(const GameSpec& game);

// Checked payoff lookup (zero-based indices).
double PayoffAt(const GameSpec& game, int k, int l, int a, int b);

// Action history (h^A_t, h^B_t) at stage t = length + 1.
struct HistoryPair {
  std::vector<int> a_seq;
  std::vector<int> b_seq;

  int stage() const { return static_cast<int>(a_seq.size()) + 1; }
  bool operator==(const HistoryPair&) const = default;
};

// Canonical enumeration of H^A_t x H^B_t for t = 1..horizon. Histories at a
// stage are numbered lexicographically in (a_1, b_1, ..., a_{t-1}, b_{t-1})
// with the a-index major, so child(h, a, b) = h*|A||B| + a*|B| + b.
class HistoryIndex {
 public:
  HistoryIndex(int num_a, int num_b, int horizon,
               int horizon_cap = kDefaultHorizonCap);

  int horizon() const { return horizon_; }
  int num_a() const { return num_a_; }
  int num_b() const { return num_b_; }
  int cells() const { return num_a_ * num_b_; }

  // Number of history pairs at `stage` (1-based): (|A||B|)^(stage-1).
  int Count(int stage) const;
  // Sum of Count over stages 1..horizon.
  long TotalNodes() const;

  int Child(int h, int a, int b) const { return h * cells() + a * num_b_ + b; }
  int Parent(int h) const { return h / cells(); }
  int LastA(int h) const { return (h % cells()) / num_b_; }
  int LastB(int h) const { return h % num_b_; }

  HistoryPair Pair(int stage, int h) const;
  int Index(const HistoryPair& pair) const;

 private:
  int num_a_;
  int num_b_;
  int horizon_;
  std::vector<int> counts_;
};

HistoryIndex EnumerateHistories(const GameSpec& game, int horizon,
                                int horizon_cap = kDefaultHorizonCap);

// p_t or q_t: a distribution over the owner's own types.
struct BeliefVector {
  Player owner = Player::kOne;
  std::vector<double> probs;
};

// mu_t (about player 1's types, size |K|) or nu_t (about player 2's types,
// size |L|), in payoff units.
struct RegretVector {
  Player about = Player::kOne;
  std::vector<double> values;
};

void ValidateBelief(const BeliefVector& belief, double tolerance = 1e-9);

}  // namespace rbsolve

#endif  // RBSOLVE_GAME_MODEL_H_
