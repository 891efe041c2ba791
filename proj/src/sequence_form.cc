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

#include "rbsolve/sequence_form.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "rbsolve/errors.h"

namespace rbsolve {
namespace {

constexpr double kUnreachableWeight = 1e-9;

int OwnTypes(const GameSpec& game, Player p) {
  return p == Player::kOne ? game.num_k() : game.num_l();
}
int OppTypes(const GameSpec& game, Player p) {
  return p == Player::kOne ? game.num_l() : game.num_k();
}
int OwnActions(const GameSpec& game, Player p) {
  return p == Player::kOne ? game.num_a() : game.num_b();
}

void CheckSize(const std::vector<double>& v, int n, const std::string& what) {
  if (static_cast<int>(v.size()) != n) {
    throw InputError(what + " has size " + std::to_string(v.size()) + ", expected " +
                     std::to_string(n));
  }
  for (double x : v) {
    if (!std::isfinite(x)) throw InputError(what + " must be finite");
  }
}

}  // namespace

StageTensor::StageTensor(Player owner, const HistoryIndex& index, int num_types,
                         int num_actions)
    : owner_(owner), index_(index), num_types_(num_types), num_actions_(num_actions) {
  for (int t = 1; t <= index_.horizon(); ++t) {
    data_.emplace_back(static_cast<std::size_t>(num_types) * index_.Count(t) * num_actions,
                       0.0);
  }
}

double RealizationPlan::ParentWeight(int stage, int type, int h) const {
  if (stage == 1) return root[type];
  return weights.At(stage - 1, type, weights.index().Parent(h), weights.OwnLastAction(h));
}

double RealizationPlan::MaxFlowViolation() const {
  double worst = 0.0;
  const HistoryIndex& index = weights.index();
  for (int t = 1; t <= horizon(); ++t) {
    for (int type = 0; type < weights.num_types(); ++type) {
      for (int h = 0; h < index.Count(t); ++h) {
        double total = 0.0;
        for (int a = 0; a < weights.num_actions(); ++a) {
          const double w = weights.At(t, type, h, a);
          worst = std::max(worst, -w);
          total += w;
        }
        worst = std::max(worst, std::abs(total - ParentWeight(t, type, h)));
      }
    }
  }
  return worst;
}

std::vector<double> BehaviorStrategy::Mix(int stage, int type, int h) const {
  std::vector<double> mix(probs.num_actions());
  for (int a = 0; a < probs.num_actions(); ++a) mix[a] = probs.At(stage, type, h, a);
  return mix;
}

BehaviorStrategy UniformStrategy(const GameSpec& game, Player owner, int horizon,
                                 int horizon_cap) {
  HistoryIndex index(game.num_a(), game.num_b(), horizon, horizon_cap);
  const int actions = OwnActions(game, owner);
  BehaviorStrategy s{StageTensor(owner, index, OwnTypes(game, owner), actions)};
  for (int t = 1; t <= horizon; ++t) {
    for (int type = 0; type < s.probs.num_types(); ++type) {
      for (int h = 0; h < index.Count(t); ++h) {
        for (int a = 0; a < actions; ++a) s.probs.At(t, type, h, a) = 1.0 / actions;
      }
    }
  }
  return s;
}

BehaviorStrategy ToBehaviorStrategy(const RealizationPlan& plan) {
  const StageTensor& w = plan.weights;
  BehaviorStrategy s{StageTensor(w.owner(), w.index(), w.num_types(), w.num_actions())};
  const int actions = w.num_actions();
  for (int t = 1; t <= w.horizon(); ++t) {
    for (int type = 0; type < w.num_types(); ++type) {
      for (int h = 0; h < w.index().Count(t); ++h) {
        double total = 0.0;
        for (int a = 0; a < actions; ++a) total += std::max(0.0, w.At(t, type, h, a));
        if (plan.ParentWeight(t, type, h) <= kUnreachableWeight || total <= 0.0) {
          for (int a = 0; a < actions; ++a) s.probs.At(t, type, h, a) = 1.0 / actions;
          continue;
        }
        for (int a = 0; a < actions; ++a) {
          s.probs.At(t, type, h, a) = std::max(0.0, w.At(t, type, h, a)) / total;
        }
      }
    }
  }
  return s;
}

RealizationPlan ToRealizationPlan(const BehaviorStrategy& strategy,
                                  const std::vector<double>& root) {
  const StageTensor& s = strategy.probs;
  CheckSize(root, s.num_types(), "root weights");
  RealizationPlan plan{root, StageTensor(s.owner(), s.index(), s.num_types(), s.num_actions())};
  for (int t = 1; t <= s.horizon(); ++t) {
    for (int type = 0; type < s.num_types(); ++type) {
      for (int h = 0; h < s.index().Count(t); ++h) {
        const double parent = plan.ParentWeight(t, type, h);
        for (int a = 0; a < s.num_actions(); ++a) {
          plan.weights.At(t, type, h, a) = parent * s.At(t, type, h, a);
        }
      }
    }
  }
  return plan;
}

SequenceLpLayout::SequenceLpLayout(const GameSpec& game, const SequenceLpSpec& spec,
                                   int horizon_cap)
    : index_(game.num_a(), game.num_b(), spec.stages, horizon_cap),
      num_own_types_(OwnTypes(game, spec.player)),
      num_opp_types_(OppTypes(game, spec.player)),
      num_own_actions_(OwnActions(game, spec.player)) {
  int column = 0;
  for (int t = 1; t <= spec.stages; ++t) {
    plan_offset_.push_back(column);
    column += num_own_types_ * index_.Count(t) * num_own_actions_;
  }
  num_plan_columns_ = column;
  for (int s = 2; s <= spec.stages; ++s) {
    payoff_offset_.push_back(column);
    column += num_opp_types_ * index_.Count(s);
  }
  stage0_offset_ = column;
  column += num_opp_types_;
  if (spec.regret) epigraph_column_ = column++;
  num_columns_ = column;
}

int SequenceLpLayout::PlanColumn(int stage, int type, int h, int action) const {
  return plan_offset_[stage - 1] + (type * index_.Count(stage) + h) * num_own_actions_ + action;
}

int SequenceLpLayout::PayoffColumn(int stage, int opp_type, int g) const {
  return payoff_offset_[stage - 2] + opp_type * index_.Count(stage) + g;
}

SequenceLp BuildSequenceLp(const GameSpec& game, const SequenceLpSpec& spec,
                           int horizon_cap) {
  if (spec.opponent_prior.has_value() == spec.regret.has_value()) {
    throw InputError("sequence LP needs exactly one of opponent prior or regret");
  }
  if (!std::isfinite(spec.weights.immediate) || !std::isfinite(spec.weights.continuation)) {
    throw InputError("stage weights must be finite");
  }
  const Player me = spec.player;
  const int own_types = OwnTypes(game, me);
  const int opp_types = OppTypes(game, me);
  CheckSize(spec.root, own_types, "root belief");
  for (double x : spec.root) {
    if (x < 0.0) throw InputError("root belief entries must be nonnegative");
  }
  if (spec.opponent_prior) CheckSize(*spec.opponent_prior, opp_types, "opponent prior");
  if (spec.regret) CheckSize(*spec.regret, opp_types, "regret");

  SequenceLp lp{SequenceLpLayout(game, spec, horizon_cap), LpProblem{}};
  const SequenceLpLayout& layout = lp.layout;
  const HistoryIndex& index = layout.index();
  LpProblem& problem = lp.problem;
  const int n = spec.stages;
  const double alpha = spec.weights.immediate;
  const double beta = spec.weights.continuation;
  const int num_a = game.num_a();
  const int num_b = game.num_b();
  const bool p1 = me == Player::kOne;

  problem.sense = p1 ? ObjectiveSense::kMaximize : ObjectiveSense::kMinimize;
  const VariableBounds free{-kInfinity, kInfinity};
  for (int c = 0; c < layout.Stage0Column(0); ++c) {
    problem.AddVariable(0.0, c < layout.num_plan_columns() ? VariableBounds{} : free);
  }
  for (int j = 0; j < opp_types; ++j) {
    problem.AddVariable(spec.opponent_prior ? (*spec.opponent_prior)[j] : 0.0, free);
  }
  if (spec.regret) problem.AddVariable(1.0, free);

  // Realization-plan flow constraints.
  const int own_actions = layout.num_own_actions();
  for (int t = 1; t <= n; ++t) {
    for (int type = 0; type < own_types; ++type) {
      for (int h = 0; h < index.Count(t); ++h) {
        LpConstraint& row = problem.AddConstraint(Relation::kEqual, t == 1 ? spec.root[type] : 0.0);
        for (int a = 0; a < own_actions; ++a) row.coefficients[layout.PlanColumn(t, type, h, a)] = 1.0;
        if (t > 1) {
          const int last = p1 ? index.LastA(h) : index.LastB(h);
          row.coefficients[layout.PlanColumn(t - 1, type, index.Parent(h), last)] = -1.0;
        }
      }
    }
  }

  // Epigraph constraints: one per stage, opponent type, history and opponent
  // action. The terminal payoffs are zero and simply omitted.
  const int opp_actions = p1 ? num_b : num_a;
  for (int s = 1; s <= n; ++s) {
    for (int j = 0; j < opp_types; ++j) {
      for (int g = 0; g < index.Count(s); ++g) {
        for (int o = 0; o < opp_actions; ++o) {
          LpConstraint& row = problem.AddConstraint(
              p1 ? Relation::kGreaterEqual : Relation::kLessEqual, 0.0);
          for (int type = 0; type < own_types; ++type) {
            for (int m = 0; m < own_actions; ++m) {
              const double payoff = p1 ? game.M(type, j, m, o) : game.M(j, type, o, m);
              row.coefficients[layout.PlanColumn(s, type, g, m)] += alpha * payoff;
            }
          }
          if (s < n) {
            for (int m = 0; m < own_actions; ++m) {
              const int child = p1 ? index.Child(g, m, o) : index.Child(g, o, m);
              row.coefficients[layout.PayoffColumn(s + 1, j, child)] += beta;
            }
          }
          const int parent = s == 1 ? layout.Stage0Column(j) : layout.PayoffColumn(s, j, g);
          row.coefficients[parent] -= 1.0;
        }
      }
    }
  }

  if (spec.regret) {
    for (int j = 0; j < opp_types; ++j) {
      LpConstraint& row = problem.AddConstraint(
          p1 ? Relation::kGreaterEqual : Relation::kLessEqual, -(*spec.regret)[j]);
      row.coefficients[layout.Stage0Column(j)] = 1.0;
      row.coefficients[layout.EpigraphColumn()] = -1.0;
    }
  }
  return lp;
}

SequenceLpResult SolveSequenceLp(const GameSpec& game, const SequenceLpSpec& spec,
                                 const LpOptions& options, int horizon_cap) {
  const SequenceLp lp = BuildSequenceLp(game, spec, horizon_cap);
  LpSolution solution = SolveLp(lp.problem, options);
  if (!solution.optimal()) {
    throw SolverError(std::string("sequence-form LP is ") + ToString(solution.status));
  }
  const SequenceLpLayout& layout = lp.layout;
  SequenceLpResult result;
  result.value = solution.value;
  result.iterations = solution.iterations;
  result.basis = std::move(solution.basis);
  result.plan.root = spec.root;
  result.plan.weights = StageTensor(spec.player, layout.index(), layout.num_own_types(),
                                    layout.num_own_actions());
  for (int t = 1; t <= spec.stages; ++t) {
    for (int type = 0; type < layout.num_own_types(); ++type) {
      for (int h = 0; h < layout.index().Count(t); ++h) {
        for (int a = 0; a < layout.num_own_actions(); ++a) {
          result.plan.weights.At(t, type, h, a) =
              std::max(0.0, solution.point[layout.PlanColumn(t, type, h, a)]);
        }
      }
    }
  }
  for (int j = 0; j < layout.num_opp_types(); ++j) {
    result.stage0_payoffs.push_back(solution.point[layout.Stage0Column(j)]);
  }
  return result;
}

namespace {

SequenceLpSpec PrimalSpec(const GameSpec& game, int horizon, Player player) {
  SequenceLpSpec spec;
  spec.player = player;
  spec.stages = horizon;
  spec.root = player == Player::kOne ? game.p0 : game.q0;
  spec.opponent_prior = player == Player::kOne ? game.q0 : game.p0;
  return spec;
}

}  // namespace

LpProblem BuildPrimalLpP1(const GameSpec& game, int horizon, int horizon_cap) {
  return BuildSequenceLp(game, PrimalSpec(game, horizon, Player::kOne), horizon_cap).problem;
}

LpProblem BuildPrimalLpP2(const GameSpec& game, int horizon, int horizon_cap) {
  return BuildSequenceLp(game, PrimalSpec(game, horizon, Player::kTwo), horizon_cap).problem;
}

SecuritySolution SolvePrimal(const GameSpec& game, int horizon, Player player,
                             const LpOptions& options, int horizon_cap) {
  SequenceLpResult r =
      SolveSequenceLp(game, PrimalSpec(game, horizon, player), options, horizon_cap);
  SecuritySolution solution;
  solution.game_value = r.value;
  solution.strategy = ToBehaviorStrategy(r.plan);
  solution.plan = std::move(r.plan);
  solution.stage0_payoffs = std::move(r.stage0_payoffs);
  return solution;
}

double SecurityPayoffs::Value(const std::vector<double>& opponent_prior) const {
  if (opponent_prior.size() != stage0.size()) {
    throw InputError("opponent prior size does not match the security payoffs");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < stage0.size(); ++j) total += opponent_prior[j] * stage0[j];
  return total;
}

SecurityPayoffs WeightedSecurityPayoffs(const GameSpec& game, const RealizationPlan& plan,
                                        StageWeights weights) {
  const StageTensor& x = plan.weights;
  const Player me = x.owner();
  const bool p1 = me == Player::kOne;
  if (x.num_types() != OwnTypes(game, me) || x.num_actions() != OwnActions(game, me) ||
      x.index().num_a() != game.num_a() || x.index().num_b() != game.num_b()) {
    throw InputError("realization plan does not match the game dimensions");
  }
  const HistoryIndex& index = x.index();
  const int n = x.horizon();
  const int opp_types = OppTypes(game, me);
  const int own_types = x.num_types();
  const int own_actions = x.num_actions();
  const int opp_actions = p1 ? game.num_b() : game.num_a();
  const double alpha = weights.immediate;
  const double beta = weights.continuation;

  SecurityPayoffs out;
  out.plan_owner = me;
  out.stage0.assign(opp_types, 0.0);
  out.by_stage.resize(std::max(0, n - 1));
  for (int s = 2; s <= n; ++s) {
    out.by_stage[s - 2].assign(static_cast<std::size_t>(opp_types) * index.Count(s), 0.0);
  }

  for (int s = n; s >= 1; --s) {
    for (int j = 0; j < opp_types; ++j) {
      for (int g = 0; g < index.Count(s); ++g) {
        // Player 2 minimizes against a player-1 plan; player 1 maximizes
        // against a player-2 plan.
        double best = p1 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
        for (int o = 0; o < opp_actions; ++o) {
          double column = 0.0;
          for (int type = 0; type < own_types; ++type) {
            for (int m = 0; m < own_actions; ++m) {
              const double payoff = p1 ? game.M(type, j, m, o) : game.M(j, type, o, m);
              column += alpha * payoff * x.At(s, type, g, m);
            }
          }
          if (s < n) {
            const std::vector<double>& next = out.by_stage[s - 1];
            for (int m = 0; m < own_actions; ++m) {
              const int child = p1 ? index.Child(g, m, o) : index.Child(g, o, m);
              column += beta * next[static_cast<std::size_t>(j) * index.Count(s + 1) + child];
            }
          }
          best = p1 ? std::min(best, column) : std::max(best, column);
        }
        if (s == 1) {
          out.stage0[j] = best;
        } else {
          out.by_stage[s - 2][static_cast<std::size_t>(j) * index.Count(s) + g] = best;
        }
      }
    }
  }
  return out;
}

namespace {

std::string JoinActions(const std::vector<int>& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out += '-';
    out += std::to_string(seq[i]);
  }
  return out;
}

std::vector<int> SplitActions(const std::string& text) {
  std::vector<int> seq;
  if (text.empty()) return seq;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, '-')) {
    try {
      std::size_t used = 0;
      seq.push_back(std::stoi(item, &used));
      if (used != item.size()) throw InputError("bad history entry '" + item + "'");
    } catch (const std::logic_error&) {
      throw InputError("bad history entry '" + item + "'");
    }
  }
  return seq;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void WriteStrategyCsv(const BehaviorStrategy& strategy, std::ostream& out) {
  const StageTensor& s = strategy.probs;
  std::ostringstream buffer;
  buffer.precision(17);
  buffer << "stage,type,history_a,history_b,action,probability\n";
  for (int t = 1; t <= s.horizon(); ++t) {
    for (int type = 0; type < s.num_types(); ++type) {
      for (int h = 0; h < s.index().Count(t); ++h) {
        const HistoryPair pair = s.index().Pair(t, h);
        for (int a = 0; a < s.num_actions(); ++a) {
          buffer << t << ',' << type << ',' << JoinActions(pair.a_seq) << ','
                 << JoinActions(pair.b_seq) << ',' << a << ',' << s.At(t, type, h, a) << '\n';
        }
      }
    }
  }
  out << buffer.str();
}

BehaviorStrategy ReadStrategyCsv(std::istream& in, const GameSpec& game, Player owner,
                                 int horizon_cap) {
  struct Row {
    int stage, type, action;
    HistoryPair pair;
    double probability;
  };
  std::vector<Row> rows;
  std::string line;
  int line_number = 0;
  int horizon = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_number == 1 && line.rfind("stage", 0) == 0) continue;
    const auto fields = SplitCsvLine(line);
    const std::string where = "strategy CSV line " + std::to_string(line_number);
    if (fields.size() != 6) throw InputError(where + ": expected 6 fields");
    Row row;
    try {
      row.stage = std::stoi(fields[0]);
      row.type = std::stoi(fields[1]);
      row.action = std::stoi(fields[4]);
      row.probability = std::stod(fields[5]);
    } catch (const std::logic_error&) {
      throw InputError(where + ": malformed number");
    }
    row.pair.a_seq = SplitActions(fields[2]);
    row.pair.b_seq = SplitActions(fields[3]);
    if (row.stage < 1 || row.pair.stage() != row.stage ||
        row.pair.a_seq.size() != row.pair.b_seq.size()) {
      throw InputError(where + ": history does not match the stage");
    }
    horizon = std::max(horizon, row.stage);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("strategy CSV has no rows");

  HistoryIndex index(game.num_a(), game.num_b(), horizon, horizon_cap);
  const int types = OwnTypes(game, owner);
  const int actions = OwnActions(game, owner);
  BehaviorStrategy strategy{StageTensor(owner, index, types, actions)};
  StageTensor seen(owner, index, types, actions);
  for (const Row& row : rows) {
    if (row.type < 0 || row.type >= types || row.action < 0 || row.action >= actions) {
      throw InputError("strategy CSV type or action out of range");
    }
    if (!std::isfinite(row.probability) || row.probability < 0.0) {
      throw InputError("strategy CSV probabilities must be finite and nonnegative");
    }
    const int h = index.Index(row.pair);
    strategy.probs.At(row.stage, row.type, h, row.action) = row.probability;
    seen.At(row.stage, row.type, h, row.action) += 1.0;
  }
  for (int t = 1; t <= horizon; ++t) {
    for (int type = 0; type < types; ++type) {
      for (int h = 0; h < index.Count(t); ++h) {
        double total = 0.0;
        for (int a = 0; a < actions; ++a) {
          if (seen.At(t, type, h, a) != 1.0) {
            throw InputError("strategy CSV must list every (stage, type, history, action) once");
          }
          total += strategy.probs.At(t, type, h, a);
        }
        if (std::abs(total - 1.0) > 1e-6) {
          throw InputError("strategy CSV probabilities must sum to 1 at stage " +
                           std::to_string(t));
        }
      }
    }
  }
  return strategy;
}

}  // namespace rbsolve
