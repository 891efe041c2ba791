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

// Reference computations for tests. Nothing here calls the sequence-form
// code; matrix games are solved by support enumeration, or by a plain
// normal-form LP whose answer is then certified by direct arithmetic.

#ifndef RBSOLVE_TESTS_ORACLES_H_
#define RBSOLVE_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "rbsolve/game_model.h"
#include "rbsolve/lp_solver.h"
#include "rbsolve/sequence_form.h"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Solves A z = rhs by Gaussian elimination with partial pivoting.
inline std::optional<std::vector<double>> SolveLinear(Matrix a, std::vector<double> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    if (std::abs(a[p][c]) < 1e-12) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(rhs[p], rhs[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<double> z(n);
  for (int i = 0; i < n; ++i) z[i] = rhs[i] / a[i][i];
  return z;
}

inline std::vector<std::vector<int>> Subsets(int n, int size) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != size) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Value of the zero-sum matrix game max_x min_y x'Ay by support enumeration.
// Meant for matrices up to about 8 x 8.
inline double MatrixGameValueBySupports(const Matrix& a) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(a[0].size());
  constexpr double kTol = 1e-9;
  for (int size = 1; size <= std::min(m, n); ++size) {
    for (const auto& rows : Subsets(m, size)) {
      for (const auto& cols : Subsets(n, size)) {
        // Row mix x on `rows` equalizing columns in `cols`.
        Matrix ex(size + 1, std::vector<double>(size + 1, 0.0));
        std::vector<double> bx(size + 1, 0.0);
        for (int j = 0; j < size; ++j) {
          for (int i = 0; i < size; ++i) ex[j][i] = a[rows[i]][cols[j]];
          ex[j][size] = -1.0;
        }
        for (int i = 0; i < size; ++i) ex[size][i] = 1.0;
        bx[size] = 1.0;
        Matrix ey(size + 1, std::vector<double>(size + 1, 0.0));
        std::vector<double> by(size + 1, 0.0);
        for (int i = 0; i < size; ++i) {
          for (int j = 0; j < size; ++j) ey[i][j] = a[rows[i]][cols[j]];
          ey[i][size] = -1.0;
        }
        for (int j = 0; j < size; ++j) ey[size][j] = 1.0;
        by[size] = 1.0;
        const auto x = SolveLinear(ex, bx);
        const auto y = SolveLinear(ey, by);
        if (!x || !y) continue;
        bool ok = true;
        for (int i = 0; i < size; ++i) ok = ok && (*x)[i] >= -kTol && (*y)[i] >= -kTol;
        if (!ok) continue;
        const double v = (*x)[size];
        for (int j = 0; j < n && ok; ++j) {
          double s = 0.0;
          for (int i = 0; i < size; ++i) s += (*x)[i] * a[rows[i]][j];
          ok = s >= v - 1e-7;
        }
        for (int i = 0; i < m && ok; ++i) {
          double s = 0.0;
          for (int j = 0; j < size; ++j) s += (*y)[j] * a[i][cols[j]];
          ok = s <= v + 1e-7;
        }
        if (ok) return v;
      }
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

struct CertifiedValue {
  double lower = 0.0;  // min_j of x'A e_j for the computed row mix
  double upper = 0.0;  // max_i of e_i'A y for the computed column mix
};

// Normal-form LPs for both players, then the guarantee of each mix
// recomputed by hand. lower == upper certifies the value.
inline CertifiedValue MatrixGameValueCertified(const Matrix& a) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(a[0].size());
  rbsolve::LpProblem row;
  row.sense = rbsolve::ObjectiveSense::kMaximize;
  for (int i = 0; i < m; ++i) row.AddVariable(0.0);
  const int v = row.AddVariable(1.0, {-rbsolve::kInfinity, rbsolve::kInfinity});
  for (int j = 0; j < n; ++j) {
    auto& c = row.AddConstraint(rbsolve::Relation::kGreaterEqual, 0.0);
    for (int i = 0; i < m; ++i) c.coefficients[i] = a[i][j];
    c.coefficients[v] = -1.0;
  }
  auto& sx = row.AddConstraint(rbsolve::Relation::kEqual, 1.0);
  for (int i = 0; i < m; ++i) sx.coefficients[i] = 1.0;

  rbsolve::LpProblem col;
  col.sense = rbsolve::ObjectiveSense::kMinimize;
  for (int j = 0; j < n; ++j) col.AddVariable(0.0);
  const int w = col.AddVariable(1.0, {-rbsolve::kInfinity, rbsolve::kInfinity});
  for (int i = 0; i < m; ++i) {
    auto& c = col.AddConstraint(rbsolve::Relation::kLessEqual, 0.0);
    for (int j = 0; j < n; ++j) c.coefficients[j] = a[i][j];
    c.coefficients[w] = -1.0;
  }
  auto& sy = col.AddConstraint(rbsolve::Relation::kEqual, 1.0);
  for (int j = 0; j < n; ++j) sy.coefficients[j] = 1.0;

  const auto rx = rbsolve::SolveLp(row);
  const auto ry = rbsolve::SolveLp(col);
  CertifiedValue out;
  out.lower = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += std::max(rx.point[i], 0.0) * a[i][j];
    out.lower = std::min(out.lower, s);
  }
  out.upper = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += std::max(ry.point[j], 0.0) * a[i][j];
    out.upper = std::max(out.upper, s);
  }
  return out;
}

// Reduced pure strategy of one type for T <= 2: the stage-1 action and,
// for T = 2, a stage-2 action for every opponent stage-1 action.
struct PureTypeStrategy {
  int first = 0;
  std::vector<int> second;  // indexed by the opponent's stage-1 action
};

inline std::vector<PureTypeStrategy> TypeStrategies(int own_actions, int opp_actions,
                                                    int horizon) {
  std::vector<PureTypeStrategy> out;
  int second_count = 1;
  if (horizon == 2) {
    for (int i = 0; i < opp_actions; ++i) second_count *= own_actions;
  }
  for (int f = 0; f < own_actions; ++f) {
    for (int code = 0; code < second_count; ++code) {
      PureTypeStrategy s;
      s.first = f;
      if (horizon == 2) {
        int c = code;
        for (int i = 0; i < opp_actions; ++i) {
          s.second.push_back(c % own_actions);
          c /= own_actions;
        }
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

// Every combination of per-type strategies.
inline std::vector<std::vector<int>> Profiles(int types, int options) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(types, 0);
  for (;;) {
    out.push_back(cur);
    int i = 0;
    while (i < types && ++cur[i] == options) cur[i++] = 0;
    if (i == types) break;
  }
  return out;
}

inline double PurePayoff(const rbsolve::GameSpec& g, int horizon, int k, int l,
                         const PureTypeStrategy& s1, const PureTypeStrategy& s2) {
  double total = g.M(k, l, s1.first, s2.first);
  if (horizon == 2) total += g.M(k, l, s1.second[s2.first], s2.second[s1.first]);
  return total;
}

// The |K|,|L|-type repeated game as a matrix game over reduced pure
// strategy profiles (rows player 1).
inline Matrix NormalForm(const rbsolve::GameSpec& g, int horizon) {
  const auto s1 = TypeStrategies(g.num_a(), g.num_b(), horizon);
  const auto s2 = TypeStrategies(g.num_b(), g.num_a(), horizon);
  const auto rows = Profiles(g.num_k(), static_cast<int>(s1.size()));
  const auto cols = Profiles(g.num_l(), static_cast<int>(s2.size()));
  Matrix a(rows.size(), std::vector<double>(cols.size(), 0.0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      double v = 0.0;
      for (int k = 0; k < g.num_k(); ++k) {
        for (int l = 0; l < g.num_l(); ++l) {
          v += g.p0[k] * g.q0[l] * PurePayoff(g, horizon, k, l, s1[rows[i][k]], s2[cols[j][l]]);
        }
      }
      a[i][j] = v;
    }
  }
  return a;
}

// Per-opponent-type best-response payoff against a fixed behavior strategy
// (T <= 2), by enumerating the opponent's reduced pure strategies and
// walking the tree. Player 2 minimizes against a player-1 strategy and
// player 1 maximizes against a player-2 strategy.
inline std::vector<double> BruteForceBestResponse(const rbsolve::GameSpec& g,
                                                  const rbsolve::BehaviorStrategy& fixed) {
  const auto& probs = fixed.probs;
  const int horizon = probs.horizon();
  const bool p1_fixed = probs.owner() == rbsolve::Player::kOne;
  const int own_types = p1_fixed ? g.num_k() : g.num_l();
  const int opp_types = p1_fixed ? g.num_l() : g.num_k();
  const int own_actions = p1_fixed ? g.num_a() : g.num_b();
  const int opp_actions = p1_fixed ? g.num_b() : g.num_a();
  const auto& prior = p1_fixed ? g.p0 : g.q0;
  const auto opp = TypeStrategies(opp_actions, own_actions, horizon);
  auto m = [&](int own_t, int opp_t, int own_a, int opp_a) {
    return p1_fixed ? g.M(own_t, opp_t, own_a, opp_a) : g.M(opp_t, own_t, opp_a, own_a);
  };
  std::vector<double> out;
  for (int j = 0; j < opp_types; ++j) {
    double best = p1_fixed ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
    for (const auto& s : opp) {
      double v = 0.0;
      for (int i = 0; i < own_types; ++i) {
        for (int a1 = 0; a1 < own_actions; ++a1) {
          const double pr1 = prior[i] * probs.At(1, i, 0, a1);
          if (pr1 == 0.0) continue;
          v += pr1 * m(i, j, a1, s.first);
          if (horizon < 2) continue;
          // Stage-2 history index of (a1, b1) in player-1/player-2 order.
          const int h = p1_fixed ? a1 * g.num_b() + s.first : s.first * g.num_b() + a1;
          for (int a2 = 0; a2 < own_actions; ++a2) {
            v += pr1 * probs.At(2, i, h, a2) * m(i, j, a2, s.second[a1]);
          }
        }
      }
      best = p1_fixed ? std::min(best, v) : std::max(best, v);
    }
    out.push_back(best);
  }
  return out;
}

inline rbsolve::GameSpec RandomGame(std::mt19937_64& rng, int nk, int nl, int na, int nb,
                                    double scale = 10.0) {
  std::uniform_real_distribution<double> pay(-scale, scale);
  std::uniform_real_distribution<double> w(0.2, 1.0);
  std::vector<double> payoff(static_cast<std::size_t>(nk) * nl * na * nb);
  for (double& x : payoff) x = pay(rng);
  auto simplex = [&](int n) {
    std::vector<double> v(n);
    double s = 0.0;
    for (double& x : v) s += (x = w(rng));
    for (double& x : v) x /= s;
    return v;
  };
  std::vector<double> p0 = simplex(nk);
  std::vector<double> q0 = simplex(nl);
  return rbsolve::MakeGame(nk, nl, na, nb, std::move(payoff), std::move(p0), std::move(q0));
}

}  // namespace oracle

#endif  // RBSOLVE_TESTS_ORACLES_H_
