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

#ifndef RBSOLVE_LP_SOLVER_H_
#define RBSOLVE_LP_SOLVER_H_

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace rbsolve {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class ObjectiveSense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* ToString(LpStatus status);

struct LpConstraint {
  std::vector<double> coefficients;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

struct VariableBounds {
  double lower = 0.0;
  double upper = kInfinity;
};

// A dense linear program. Variables default to [0, +inf).
struct LpProblem {
  ObjectiveSense sense = ObjectiveSense::kMaximize;
  std::vector<double> objective;
  std::vector<LpConstraint> constraints;
  std::vector<VariableBounds> bounds;
  std::vector<std::string> names;  // optional, empty or one per variable

  int num_variables() const { return static_cast<int>(objective.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }

  // Appends a variable and returns its column index.
  int AddVariable(double objective_coefficient, VariableBounds bounds = {},
                  std::string name = {});
  // Appends an all-zero row and returns a reference for filling it in.
  LpConstraint& AddConstraint(Relation relation, double rhs);

  // Throws InputError on ragged rows, bad bounds or non-finite data.
  void Validate() const;
};

// Basis snapshot in the solver's internal numbering, with its inverse.
// Only meaningful to a later solve of an LP with the same matrix and
// objective.
struct LpBasis {
  std::vector<int> columns;
  std::vector<double> row_sign;
  std::vector<double> inverse;  // column-major

  bool empty() const { return columns.empty(); }
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> point;
  // One multiplier per constraint. For a maximization with <= rows the
  // multipliers are nonnegative and value == sum(rhs * dual) when all
  // variable bounds are [0, inf).
  std::vector<double> dual_point;
  int iterations = 0;
  // Final basis; can seed a later solve through LpOptions::warm_basis.
  LpBasis basis;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

struct LpOptions {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  // Consecutive degenerate pivots tolerated under largest-coefficient pricing
  // before switching to Bland's rule.
  int degenerate_pivots_before_bland = 50;
  int max_iterations = 0;  // 0: 50 * (rows + columns)
  // Optimal basis of an earlier problem with the same matrix and objective
  // (right-hand sides may differ). Ignored when it does not fit.
  const LpBasis* warm_basis = nullptr;
};

// Two-phase revised simplex on an explicit basis inverse. Pure function of
// its arguments; safe to call concurrently on distinct problems.
LpSolution SolveLp(const LpProblem& problem, const LpOptions& options = {});

// Maximum constraint violation of `point` (bounds included).
double MaxViolation(const LpProblem& problem, const std::vector<double>& point);

// Plain-text dump, one constraint per line, for cross-checking elsewhere.
void WriteLp(const LpProblem& problem, std::ostream& out);

}  // namespace rbsolve

#endif  // RBSOLVE_LP_SOLVER_H_
