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

#include "rbsolve/game_model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rbsolve/errors.h"

namespace rbsolve {
namespace {

using nlohmann::json;

std::vector<std::string> Labels(const char* prefix, int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return labels;
}

void ValidateDistribution(const std::vector<double>& v, const char* field,
                          std::size_t expected) {
  const std::string name(field);
  if (v.size() != expected) {
    throw InputError(name + " must have " + std::to_string(expected) +
                     " entries, got " + std::to_string(v.size()));
  }
  double sum = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw InputError(name + " entries must be finite");
    if (x <= 0.0) throw InputError(name + " entries must be positive");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InputError(name + " must sum to 1");
}

std::vector<std::string> ReadLabels(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  const json& node = doc.at(key);
  if (!node.is_array() || node.empty()) {
    throw InputError(std::string(key) + " must be a non-empty array of strings");
  }
  std::vector<std::string> labels;
  for (const json& item : node) {
    if (!item.is_string()) throw InputError(std::string(key) + " entries must be strings");
    labels.push_back(item.get<std::string>());
  }
  return labels;
}

std::vector<double> ReadNumbers(const json& node, const std::string& what) {
  if (!node.is_array()) throw InputError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const json& item : node) {
    if (!item.is_number()) throw InputError(what + " entries must be numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

}  // namespace

double GameSpec::MaxAbsPayoff() const {
  double m = 0.0;
  for (double v : payoff) m = std::max(m, std::abs(v));
  return m;
}

GameSpec MakeGame(int num_k, int num_l, int num_a, int num_b,
                  std::vector<double> payoff, std::vector<double> p0,
                  std::vector<double> q0, std::optional<double> discount) {
  GameSpec game{Labels("k", num_k), Labels("l", num_l), Labels("a", num_a),
                Labels("b", num_b), std::move(payoff), std::move(p0),
                std::move(q0), discount};
  ValidateGame(game);
  return game;
}

void ValidateGame(const GameSpec& game) {
  if (game.k_types.empty() || game.l_types.empty() || game.a_actions.empty() ||
      game.b_actions.empty()) {
    throw InputError("type and action sets must be non-empty");
  }
  const std::size_t expected = static_cast<std::size_t>(game.num_k()) *
                               game.num_l() * game.num_a() * game.num_b();
  if (game.payoff.size() != expected) {
    throw InputError("payoff must have dimensions |K|x|L|x|A|x|B| (" +
                     std::to_string(expected) + " entries), got " +
                     std::to_string(game.payoff.size()));
  }
  for (double v : game.payoff) {
    if (!std::isfinite(v)) throw InputError("payoff entries must be finite");
  }
  ValidateDistribution(game.p0, "p0", game.k_types.size());
  ValidateDistribution(game.q0, "q0", game.l_types.size());
  if (game.discount && !(*game.discount > 0.0 && *game.discount < 1.0)) {
    throw InputError("discount must lie strictly inside (0, 1)");
  }
}

GameSpec LoadGame(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("game document parse error: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("game document must be a JSON object");

  GameSpec game;
  game.k_types = ReadLabels(doc, "k_types");
  game.l_types = ReadLabels(doc, "l_types");
  game.a_actions = ReadLabels(doc, "a_actions");
  game.b_actions = ReadLabels(doc, "b_actions");

  for (const char* key : {"payoff", "p0", "q0"}) {
    if (!doc.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  }
  const json& m = doc.at("payoff");
  auto dimension_error = [] {
    return InputError("payoff must be nested [k][l][a][b] matching the type and action sets");
  };
  if (!m.is_array() || m.size() != game.k_types.size()) throw dimension_error();
  for (const json& by_l : m) {
    if (!by_l.is_array() || by_l.size() != game.l_types.size()) throw dimension_error();
    for (const json& by_a : by_l) {
      if (!by_a.is_array() || by_a.size() != game.a_actions.size()) throw dimension_error();
      for (const json& by_b : by_a) {
        if (!by_b.is_array() || by_b.size() != game.b_actions.size()) throw dimension_error();
        for (double v : ReadNumbers(by_b, "payoff")) game.payoff.push_back(v);
      }
    }
  }
  game.p0 = ReadNumbers(doc.at("p0"), "p0");
  game.q0 = ReadNumbers(doc.at("q0"), "q0");
  if (doc.contains("discount") && !doc.at("discount").is_null()) {
    if (!doc.at("discount").is_number()) throw InputError("discount must be a number");
    game.discount = doc.at("discount").get<double>();
  }
  ValidateGame(game);
  return game;
}

GameSpec LoadGameFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open game file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return LoadGame(buffer.str());
}

std::string SerializeGame(const GameSpec& game) {
  json doc;
  doc["k_types"] = game.k_types;
  doc["l_types"] = game.l_types;
  doc["a_actions"] = game.a_actions;
  doc["b_actions"] = game.b_actions;
  json m = json::array();
  for (int k = 0; k < game.num_k(); ++k) {
    json by_l = json::array();
    for (int l = 0; l < game.num_l(); ++l) {
      json by_a = json::array();
      for (int a = 0; a < game.num_a(); ++a) {
        json row = json::array();
        for (int b = 0; b < game.num_b(); ++b) row.push_back(game.M(k, l, a, b));
        by_a.push_back(row);
      }
      by_l.push_back(by_a);
    }
    m.push_back(by_l);
  }
  doc["payoff"] = m;
  doc["p0"] = game.p0;
  doc["q0"] = game.q0;
  if (game.discount) doc["discount"] = *game.discount;
  return doc.dump(2);
}

double PayoffAt(const GameSpec& game, int k, int l, int a, int b) {
  if (k < 0 || k >= game.num_k() || l < 0 || l >= game.num_l() || a < 0 ||
      a >= game.num_a() || b < 0 || b >= game.num_b()) {
    throw InputError("payoff index out of range");
  }
  return game.M(k, l, a, b);
}

HistoryIndex::HistoryIndex(int num_a, int num_b, int horizon, int horizon_cap)
    : num_a_(num_a), num_b_(num_b), horizon_(horizon) {
  if (num_a < 1 || num_b < 1) throw InputError("action sets must be non-empty");
  if (horizon < 1) throw InputError("horizon must be at least 1");
  if (horizon > horizon_cap) {
    throw CapacityError("horizon " + std::to_string(horizon) +
                        " exceeds the capacity cap of " + std::to_string(horizon_cap));
  }
  long count = 1;
  for (int t = 1; t <= horizon; ++t) {
    if (count > (1L << 30)) throw CapacityError("history tree too large");
    counts_.push_back(static_cast<int>(count));
    count *= cells();
  }
}

int HistoryIndex::Count(int stage) const {
  if (stage < 1 || stage > horizon_) throw InputError("stage out of range");
  return counts_[stage - 1];
}

long HistoryIndex::TotalNodes() const {
  long total = 0;
  for (int c : counts_) total += c;
  return total;
}

HistoryPair HistoryIndex::Pair(int stage, int h) const {
  if (h < 0 || h >= Count(stage)) throw InputError("history index out of range");
  HistoryPair pair;
  pair.a_seq.resize(stage - 1);
  pair.b_seq.resize(stage - 1);
  for (int s = stage - 2; s >= 0; --s) {
    pair.a_seq[s] = LastA(h);
    pair.b_seq[s] = LastB(h);
    h = Parent(h);
  }
  return pair;
}

int HistoryIndex::Index(const HistoryPair& pair) const {
  if (pair.a_seq.size() != pair.b_seq.size()) {
    throw InputError("history action sequences must have equal length");
  }
  if (pair.stage() > horizon_) throw InputError("history longer than horizon");
  int h = 0;
  for (std::size_t s = 0; s < pair.a_seq.size(); ++s) {
    const int a = pair.a_seq[s];
    const int b = pair.b_seq[s];
    if (a < 0 || a >= num_a_ || b < 0 || b >= num_b_) {
      throw InputError("history action out of range");
    }
    h = Child(h, a, b);
  }
  return h;
}

HistoryIndex EnumerateHistories(const GameSpec& game, int horizon, int horizon_cap) {
  return HistoryIndex(game.num_a(), game.num_b(), horizon, horizon_cap);
}

void ValidateBelief(const BeliefVector& belief, double tolerance) {
  double sum = 0.0;
  for (double p : belief.probs) {
    if (!std::isfinite(p) || p < -tolerance) {
      throw InputError("belief entries must be nonnegative");
    }
    sum += p;
  }
  if (belief.probs.empty() || std::abs(sum - 1.0) > tolerance) {
    throw InputError("belief must sum to 1");
  }
}

}  // namespace rbsolve
