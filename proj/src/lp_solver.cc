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

#include "rbsolve/lp_solver.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

#include "rbsolve/errors.h"

namespace rbsolve {
namespace {

struct Entry {
  int row;
  double value;
};

// Internal form: minimize cost.x subject to A x = rhs, rhs >= 0, with every
// column either nonnegative or free. Every row starts with a unit column
// (slack or artificial) in the basis.
struct StandardForm {
  struct VariableMap {
    int column = -1;
    double sign = 1.0;
    double offset = 0.0;
  };

  int rows = 0;
  int original_rows = 0;
  std::vector<std::vector<Entry>> columns;
  std::vector<char> is_free;
  std::vector<double> cost;
  std::vector<double> rhs;
  std::vector<double> row_sign;
  std::vector<int> initial_basis;
  int first_artificial = 0;
  double objective_sign = 1.0;
  std::vector<VariableMap> variables;
};

StandardForm ToStandardForm(const LpProblem& problem) {
  StandardForm form;
  const int n = problem.num_variables();
  const int m0 = problem.num_constraints();
  form.original_rows = m0;
  form.objective_sign =
      problem.sense == ObjectiveSense::kMinimize ? 1.0 : -1.0;

  std::vector<double> row_rhs(m0);
  std::vector<Relation> row_relation(m0);
  for (int i = 0; i < m0; ++i) {
    row_rhs[i] = problem.constraints[i].rhs;
    row_relation[i] = problem.constraints[i].relation;
  }

  // Structural columns. Box constraints become extra <= rows.
  form.variables.resize(n);
  form.columns.resize(n);
  form.is_free.assign(n, 0);
  std::vector<std::pair<int, double>> box_rows;  // (column, width)
  for (int j = 0; j < n; ++j) {
    const VariableBounds& b = problem.bounds[j];
    auto& map = form.variables[j];
    map.column = j;
    if (std::isfinite(b.lower)) {
      map.offset = b.lower;
      if (std::isfinite(b.upper)) box_rows.emplace_back(j, b.upper - b.lower);
    } else if (std::isfinite(b.upper)) {
      map.offset = b.upper;
      map.sign = -1.0;
    } else {
      form.is_free[j] = 1;
    }
  }

  for (int i = 0; i < m0; ++i) {
    const auto& coeffs = problem.constraints[i].coefficients;
    for (int j = 0; j < n; ++j) {
      const double a = coeffs[j];
      if (a == 0.0) continue;
      const auto& map = form.variables[j];
      row_rhs[i] -= a * map.offset;
      form.columns[j].push_back({i, a * map.sign});
    }
  }
  for (const auto& [column, width] : box_rows) {
    const int row = static_cast<int>(row_rhs.size());
    form.columns[column].push_back({row, 1.0});
    row_rhs.push_back(width);
    row_relation.push_back(Relation::kLessEqual);
  }

  const int m = static_cast<int>(row_rhs.size());
  form.rows = m;
  form.cost.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    form.cost[j] = form.objective_sign * problem.objective[j] * form.variables[j].sign;
  }

  // Slack columns, row orientation, and the initial unit basis.
  form.row_sign.assign(m, 1.0);
  form.initial_basis.assign(m, -1);
  std::vector<double> slack_coefficient(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double b = row_rhs[i];
    switch (row_relation[i]) {
      case Relation::kLessEqual:
        slack_coefficient[i] = 1.0;
        form.row_sign[i] = b >= 0.0 ? 1.0 : -1.0;
        break;
      case Relation::kGreaterEqual:
        slack_coefficient[i] = -1.0;
        form.row_sign[i] = b <= 0.0 ? -1.0 : 1.0;
        break;
      case Relation::kEqual:
        form.row_sign[i] = b >= 0.0 ? 1.0 : -1.0;
        break;
    }
  }
  for (auto& column : form.columns) {
    for (auto& e : column) e.value *= form.row_sign[e.row];
  }
  form.rhs.resize(m);
  for (int i = 0; i < m; ++i) form.rhs[i] = form.row_sign[i] * row_rhs[i];

  auto add_unit = [&form](int row, double value) {
    form.columns.push_back({{row, value}});
    form.cost.push_back(0.0);
    form.is_free.push_back(0);
    return static_cast<int>(form.columns.size()) - 1;
  };
  for (int i = 0; i < m; ++i) {
    if (slack_coefficient[i] == 0.0) continue;
    const double oriented = slack_coefficient[i] * form.row_sign[i];
    const int column = add_unit(i, oriented);
    if (oriented > 0.0) form.initial_basis[i] = column;
  }
  form.first_artificial = static_cast<int>(form.columns.size());
  for (int i = 0; i < m; ++i) {
    if (form.initial_basis[i] < 0) form.initial_basis[i] = add_unit(i, 1.0);
  }
  return form;
}

enum class PhaseResult { kOptimal, kUnbounded };

// Revised simplex with a dense, column-major explicit basis inverse. Columns
// of this LP family carry a handful of nonzeros, so the product-form update
// only touches rows where the entering column is nonzero. Free columns never
// leave the basis once they enter.
class Simplex {
 public:
  Simplex(const StandardForm& form, const LpOptions& options)
      : form_(form),
        options_(options),
        m_(form.rows),
        n_(static_cast<int>(form.columns.size())),
        basis_(form.initial_basis),
        position_(n_, -1),
        binv_(static_cast<std::size_t>(m_) * m_, 0.0),
        xb_(form.rhs),
        y_(m_, 0.0),
        alpha_(m_, 0.0),
        rhs_(form.rhs) {
    for (int i = 0; i < m_; ++i) {
      position_[basis_[i]] = i;
      At(i, i) = 1.0;
    }
    max_iterations_ = options.max_iterations > 0 ? options.max_iterations
                                                 : 50 * (m_ + n_) + 1000;
  }

  // Crash basis. Free columns go first, then other structural columns
  // replace artificials. Only rows whose basic variable sits at zero are
  // used, so the basic solution does not move and feasibility is kept.
  void Crash() {
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < form_.first_artificial; ++j) {
        if (position_[j] >= 0 || (pass == 0) != static_cast<bool>(form_.is_free[j])) continue;
        ComputeColumn(j);
        int best = -1;
        for (int i = 0; i < m_; ++i) {
          const int basic = basis_[i];
          if (form_.is_free[basic] || std::abs(xb_[i]) > 0.0) continue;
          if (pass == 1 && basic < form_.first_artificial) continue;
          if (std::abs(alpha_[i]) <= 1e-3) continue;
          if (best < 0 || std::abs(alpha_[i]) > std::abs(alpha_[best])) best = i;
        }
        if (best >= 0) Pivot(j, best, 0.0, 1.0);
      }
    }
  }

  PhaseResult Run(const std::vector<double>& cost, bool allow_artificial) {
    cost_ = &cost;
    allow_artificial_ = allow_artificial;
    Refresh();
    bool fresh = true;
    bool bland = false;
    int degenerate = 0;
    int since_refresh = 0;
    int perturbations = 0;
    for (;;) {
      if (since_refresh >= kRefreshInterval) {
        Refresh();
        fresh = true;
        since_refresh = 0;
      }
      double direction = 1.0;
      const int q = Price(bland, &direction);
      if (q < 0) {
        if (!fresh) {
          if (Residual() > 1e-9 * (1.0 + rhs_scale())) Reinvert();
          Refresh();
          fresh = true;
          since_refresh = 0;
          continue;
        }
        if (!perturbed_) return PhaseResult::kOptimal;
        RemovePerturbation();
        DualCleanup();
        Refresh();
        since_refresh = 0;
        degenerate = 0;
        bland = false;
        continue;
      }
      ComputeColumn(q);
      const int r = RatioTest(bland, direction);
      if (r < 0) {
        if (perturbed_) {
          RemovePerturbation();
          Refresh();
          continue;
        }
        return PhaseResult::kUnbounded;
      }
      const double theta = std::max(xb_[r], 0.0) / (direction * alpha_[r]);
      if (theta <= options_.feasibility_tolerance) {
        if (++degenerate >= options_.degenerate_pivots_before_bland) {
          if (!perturbed_ && perturbations < kMaxPerturbations) {
            ++perturbations;
            Perturb();
            degenerate = 0;
            fresh = true;
            since_refresh = 0;
            continue;
          }
          bland = true;
        }
      } else {
        degenerate = 0;
        bland = false;
      }
      Pivot(q, r, theta, direction);
      fresh = false;
      ++since_refresh;
      if (++iterations_ > max_iterations_) {
        throw SolverError("simplex iteration limit exceeded");
      }
    }
  }

  // Installs a previous optimal basis and restores primal feasibility with
  // dual simplex pivots. Returns false when the basis cannot be used.
  bool WarmStart(const LpBasis& warm) {
    if (static_cast<int>(warm.columns.size()) != m_ ||
        static_cast<int>(warm.row_sign.size()) != m_ ||
        warm.inverse.size() != binv_.size()) {
      return false;
    }
    std::vector<int> position(n_, -1);
    for (int i = 0; i < m_; ++i) {
      const int j = warm.columns[i];
      if (j < 0 || j >= form_.first_artificial || position[j] >= 0) return false;
      position[j] = i;
    }
    basis_ = warm.columns;
    position_ = std::move(position);
    // Rows flipped since the snapshot flip the matching inverse columns.
    binv_ = warm.inverse;
    for (int k = 0; k < m_; ++k) {
      if (warm.row_sign[k] == form_.row_sign[k]) continue;
      double* col = &binv_[static_cast<std::size_t>(k) * m_];
      for (int i = 0; i < m_; ++i) col[i] = -col[i];
    }
    cost_ = &form_.cost;
    allow_artificial_ = false;
    Refresh();
    if (Residual() > 1e-9 * (1.0 + rhs_scale())) {
      Reinvert();
      Refresh();
    }
    for (int j = 0; j < n_; ++j) {
      if (!Eligible(j)) continue;
      const double d = ReducedCost(j);
      const double slack = 1e-7 * (1.0 + std::abs(form_.cost[j]));
      if (form_.is_free[j] ? std::abs(d) > slack : d < -slack) return false;
    }
    DualCleanup();
    return true;
  }

  LpBasis Snapshot() const {
    LpBasis out;
    out.columns = basis_;
    out.row_sign = form_.row_sign;
    out.inverse = binv_;
    return out;
  }

  // Replaces basic artificials at zero level by structural or slack columns.
  void DriveOutArtificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < form_.first_artificial) continue;
      for (int j = 0; j < form_.first_artificial; ++j) {
        if (position_[j] >= 0) continue;
        double pivot = 0.0;
        for (const Entry& e : form_.columns[j]) pivot += At(r, e.row) * e.value;
        if (std::abs(pivot) <= 1e-7) continue;
        ComputeColumn(j);
        Pivot(j, r, xb_[r] / alpha_[r], 1.0);
        break;
      }
    }
  }

  double ArtificialMass() const {
    double total = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= form_.first_artificial) total += std::max(xb_[i], 0.0);
    }
    return total;
  }

  // One step of iterative refinement on the basic solution, then fresh duals.
  void Polish() {
    if (Residual() > 1e-9 * (1.0 + rhs_scale())) Reinvert();
    std::vector<double> residual = ResidualVector();
    for (int k = 0; k < m_; ++k) {
      if (residual[k] == 0.0) continue;
      const double* col = &binv_[static_cast<std::size_t>(k) * m_];
      for (int i = 0; i < m_; ++i) xb_[i] += col[i] * residual[k];
    }
    ComputeDuals();
  }

  std::vector<double> ColumnValues() const {
    std::vector<double> x(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[i];
      x[j] = form_.is_free[j] ? xb_[i] : std::max(xb_[i], 0.0);
    }
    return x;
  }

  const std::vector<double>& duals() const { return y_; }
  int iterations() const { return iterations_; }

 private:
  static constexpr int kRefreshInterval = 100;
  static constexpr int kMaxPerturbations = 5;
  static constexpr double kPerturbation = 1e-6;

  double& At(int row, int col) {
    return binv_[static_cast<std::size_t>(col) * m_ + row];
  }
  double At(int row, int col) const {
    return binv_[static_cast<std::size_t>(col) * m_ + row];
  }

  // Shifts every nonfree basic variable up by a small random amount, which
  // amounts to moving the right-hand side. Breaks ties in degenerate
  // vertices.
  void Perturb() {
    std::uniform_real_distribution<double> unit(1.0, 2.0);
    const double size = kPerturbation * (1.0 + rhs_scale());
    for (int i = 0; i < m_; ++i) {
      if (form_.is_free[basis_[i]]) continue;
      const double delta = size * unit(rng_);
      for (const Entry& e : form_.columns[basis_[i]]) rhs_[e.row] += e.value * delta;
    }
    perturbed_ = true;
    Refresh();
  }

  void RemovePerturbation() {
    rhs_ = form_.rhs;
    perturbed_ = false;
  }

  // Dual simplex on a dual feasible basis until the basic solution is
  // primal feasible again. Used after a perturbation is removed, where the
  // infeasibilities are tiny.
  void DualCleanup() {
    Refresh();
    std::vector<double> row(m_);
    for (int guard = 0; guard < 10 * m_ + 100; ++guard) {
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (form_.is_free[basis_[i]] || xb_[i] >= -options_.feasibility_tolerance) continue;
        if (r < 0 || xb_[i] < xb_[r]) r = i;
      }
      if (r < 0) return;
      for (int k = 0; k < m_; ++k) row[k] = At(r, k);
      int q = -1;
      double best = kInfinity;
      double best_pivot = 0.0;
      for (int j = 0; j < n_; ++j) {
        if (!Eligible(j)) continue;
        double a = 0.0;
        for (const Entry& e : form_.columns[j]) a += row[e.row] * e.value;
        if (form_.is_free[j]) {
          if (std::abs(a) <= 1e-7) continue;
        } else if (a >= -1e-7) {
          continue;
        }
        const double ratio = std::max(form_.is_free[j] ? 0.0 : ReducedCost(j), 0.0) / std::abs(a);
        if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && std::abs(a) > best_pivot)) {
          best = ratio;
          best_pivot = std::abs(a);
          q = j;
        }
      }
      if (q < 0) throw SolverError("dual cleanup found no entering column");
      ComputeColumn(q);
      const double value = xb_[r] / alpha_[r];
      Pivot(q, r, std::abs(value), value < 0.0 ? -1.0 : 1.0);
      ++iterations_;
    }
    throw SolverError("dual cleanup did not converge");
  }

  double rhs_scale() const {
    double scale = 0.0;
    for (double b : form_.rhs) scale = std::max(scale, std::abs(b));
    return scale;
  }

  bool Eligible(int j) const {
    if (position_[j] >= 0) return false;
    return allow_artificial_ || j < form_.first_artificial;
  }

  double ReducedCost(int j) const {
    double d = (*cost_)[j];
    for (const Entry& e : form_.columns[j]) d -= y_[e.row] * e.value;
    return d;
  }

  // Largest-coefficient pricing; Bland's lowest index when stalling. Ties go
  // to the lowest index in both modes. A free column may enter downwards.
  int Price(bool bland, double* direction) const {
    int entering = -1;
    double best = options_.optimality_tolerance;
    for (int j = 0; j < n_; ++j) {
      if (!Eligible(j)) continue;
      const double d = ReducedCost(j);
      const double gain = form_.is_free[j] ? std::abs(d) : -d;
      if (gain <= options_.optimality_tolerance) continue;
      if (bland) {
        *direction = d < 0.0 ? 1.0 : -1.0;
        return j;
      }
      if (gain > best) {
        best = gain;
        entering = j;
        *direction = d < 0.0 ? 1.0 : -1.0;
      }
    }
    return entering;
  }

  void ComputeColumn(int q) {
    std::fill(alpha_.begin(), alpha_.end(), 0.0);
    for (const Entry& e : form_.columns[q]) {
      const double* col = &binv_[static_cast<std::size_t>(e.row) * m_];
      for (int i = 0; i < m_; ++i) alpha_[i] += col[i] * e.value;
    }
  }

  // Two-pass ratio test: bound the step with a small feasibility slack, then
  // take the largest pivot among rows that block within that bound. In Bland
  // mode the lowest basic index wins among pivots of reasonable size.
  int RatioTest(bool bland, double direction) const {
    const double delta = options_.feasibility_tolerance;
    double bound = kInfinity;
    for (int i = 0; i < m_; ++i) {
      if (form_.is_free[basis_[i]]) continue;
      const double a = direction * alpha_[i];
      if (a <= options_.pivot_tolerance) continue;
      bound = std::min(bound, (std::max(xb_[i], 0.0) + delta) / a);
    }
    if (bound == kInfinity) return -1;
    double largest = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (form_.is_free[basis_[i]]) continue;
      const double a = direction * alpha_[i];
      if (a <= options_.pivot_tolerance) continue;
      if (std::max(xb_[i], 0.0) / a <= bound) largest = std::max(largest, a);
    }
    int leaving = -1;
    for (int i = 0; i < m_; ++i) {
      if (form_.is_free[basis_[i]]) continue;
      const double a = direction * alpha_[i];
      if (a <= options_.pivot_tolerance || std::max(xb_[i], 0.0) / a > bound) continue;
      if (bland) {
        if (a < 1e-3 * largest) continue;
        if (leaving < 0 || basis_[i] < basis_[leaving]) leaving = i;
      } else if (leaving < 0 || a > direction * alpha_[leaving]) {
        leaving = i;
      }
    }
    return leaving;
  }

  // Basis change with alpha_ = B^-1 a_q already computed; the entering
  // variable moves by theta in `direction`.
  void Pivot(int q, int r, double theta, double direction) {
    const double pivot = alpha_[r];
    const double d_q = cost_ ? ReducedCost(q) : 0.0;

    std::vector<int> row_nonzeros;
    for (int k = 0; k < m_; ++k) {
      double& v = At(r, k);
      if (v == 0.0) continue;
      v /= pivot;
      row_nonzeros.push_back(k);
    }
    std::vector<int> column_nonzeros;
    for (int i = 0; i < m_; ++i) {
      if (i != r && alpha_[i] != 0.0) column_nonzeros.push_back(i);
    }
    for (const int k : row_nonzeros) {
      double* col = &binv_[static_cast<std::size_t>(k) * m_];
      const double pr = col[r];
      for (const int i : column_nonzeros) col[i] -= alpha_[i] * pr;
    }
    for (const int k : row_nonzeros) y_[k] += d_q * At(r, k);

    const double step = direction * theta;
    for (int i = 0; i < m_; ++i) xb_[i] -= step * alpha_[i];
    xb_[r] = step;
    position_[basis_[r]] = -1;
    basis_[r] = q;
    position_[q] = r;
  }

  std::vector<double> ResidualVector() const {
    std::vector<double> residual(rhs_);
    for (int i = 0; i < m_; ++i) {
      for (const Entry& e : form_.columns[basis_[i]]) residual[e.row] -= e.value * xb_[i];
    }
    return residual;
  }

  double Residual() const {
    double worst = 0.0;
    for (double r : ResidualVector()) worst = std::max(worst, std::abs(r));
    return worst;
  }

  // Rebuilds the basis inverse from scratch by Gauss-Jordan elimination
  // with partial pivoting.
  void Reinvert() {
    std::vector<double> b(static_cast<std::size_t>(m_) * m_, 0.0);  // row-major
    for (int i = 0; i < m_; ++i) {
      for (const Entry& e : form_.columns[basis_[i]]) {
        b[static_cast<std::size_t>(e.row) * m_ + i] = e.value;
      }
    }
    std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    for (int c = 0; c < m_; ++c) {
      int p = c;
      for (int r = c + 1; r < m_; ++r) {
        if (std::abs(b[static_cast<std::size_t>(r) * m_ + c]) >
            std::abs(b[static_cast<std::size_t>(p) * m_ + c])) {
          p = r;
        }
      }
      const double pivot = b[static_cast<std::size_t>(p) * m_ + c];
      if (std::abs(pivot) < 1e-14) throw SolverError("singular basis");
      if (p != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(b[static_cast<std::size_t>(p) * m_ + k], b[static_cast<std::size_t>(c) * m_ + k]);
          std::swap(inv[static_cast<std::size_t>(p) * m_ + k],
                    inv[static_cast<std::size_t>(c) * m_ + k]);
        }
      }
      double* brow = &b[static_cast<std::size_t>(c) * m_];
      double* irow = &inv[static_cast<std::size_t>(c) * m_];
      std::vector<int> bnz;
      std::vector<int> inz;
      for (int k = 0; k < m_; ++k) {
        if (brow[k] != 0.0) {
          brow[k] /= pivot;
          bnz.push_back(k);
        }
        if (irow[k] != 0.0) {
          irow[k] /= pivot;
          inz.push_back(k);
        }
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = b[static_cast<std::size_t>(r) * m_ + c];
        if (f == 0.0) continue;
        double* br = &b[static_cast<std::size_t>(r) * m_];
        double* ir = &inv[static_cast<std::size_t>(r) * m_];
        for (const int k : bnz) br[k] -= f * brow[k];
        for (const int k : inz) ir[k] -= f * irow[k];
      }
    }
    // inv is B^-1 row-major: inv[i][k]; store column-major.
    for (int i = 0; i < m_; ++i) {
      for (int k = 0; k < m_; ++k) At(i, k) = inv[static_cast<std::size_t>(i) * m_ + k];
    }
  }

  void ComputeDuals() {
    for (int k = 0; k < m_; ++k) {
      const double* col = &binv_[static_cast<std::size_t>(k) * m_];
      double sum = 0.0;
      for (int i = 0; i < m_; ++i) sum += (*cost_)[basis_[i]] * col[i];
      y_[k] = sum;
    }
  }

  void Refresh() {
    std::fill(xb_.begin(), xb_.end(), 0.0);
    for (int k = 0; k < m_; ++k) {
      const double b = rhs_[k];
      if (b == 0.0) continue;
      const double* col = &binv_[static_cast<std::size_t>(k) * m_];
      for (int i = 0; i < m_; ++i) xb_[i] += col[i] * b;
    }
    ComputeDuals();
  }

  const StandardForm& form_;
  const LpOptions& options_;
  int m_;
  int n_;
  std::vector<int> basis_;
  std::vector<int> position_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  std::vector<double> y_;
  std::vector<double> alpha_;
  std::vector<double> rhs_;
  std::mt19937_64 rng_{0x5eed};
  bool perturbed_ = false;
  const std::vector<double>* cost_ = nullptr;
  bool allow_artificial_ = true;
  int iterations_ = 0;
  int max_iterations_ = 0;
};

std::string FormatNumber(double v) {
  if (v == kInfinity) return "inf";
  if (v == -kInfinity) return "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

int LpProblem::AddVariable(double objective_coefficient, VariableBounds b,
                           std::string name) {
  objective.push_back(objective_coefficient);
  bounds.push_back(b);
  if (!name.empty() || !names.empty()) {
    names.resize(objective.size() - 1);
    names.push_back(std::move(name));
  }
  for (auto& row : constraints) row.coefficients.push_back(0.0);
  return num_variables() - 1;
}

LpConstraint& LpProblem::AddConstraint(Relation relation, double rhs) {
  constraints.push_back({std::vector<double>(objective.size(), 0.0), relation, rhs});
  return constraints.back();
}

void LpProblem::Validate() const {
  const std::size_t n = objective.size();
  if (bounds.size() != n) {
    throw InputError("LP: bounds size " + std::to_string(bounds.size()) +
                     " != objective size " + std::to_string(n));
  }
  if (!names.empty() && names.size() != n) {
    throw InputError("LP: names size does not match objective size");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) throw InputError("LP: non-finite objective");
    const auto& b = bounds[j];
    if (std::isnan(b.lower) || std::isnan(b.upper) || b.lower > b.upper ||
        b.lower == kInfinity || b.upper == -kInfinity) {
      throw InputError("LP: invalid bounds on variable " + std::to_string(j));
    }
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& row = constraints[i];
    if (row.coefficients.size() != n) {
      throw InputError("LP: constraint " + std::to_string(i) + " has " +
                       std::to_string(row.coefficients.size()) +
                       " coefficients, expected " + std::to_string(n));
    }
    if (!std::isfinite(row.rhs)) throw InputError("LP: non-finite rhs");
    for (double a : row.coefficients) {
      if (!std::isfinite(a)) throw InputError("LP: non-finite coefficient");
    }
  }
}

LpSolution SolveLp(const LpProblem& problem, const LpOptions& options) {
  problem.Validate();
  const StandardForm form = ToStandardForm(problem);
  LpSolution solution;
  std::optional<Simplex> simplex;
  if (options.warm_basis != nullptr) {
    simplex.emplace(form, options);
    try {
      if (!simplex->WarmStart(*options.warm_basis)) simplex.reset();
    } catch (const SolverError&) {
      simplex.reset();
    }
  }

  if (!simplex) {
    simplex.emplace(form, options);
    simplex->Crash();
    // Phase 1: minimize the artificial mass.
    if (form.first_artificial < static_cast<int>(form.columns.size())) {
      std::vector<double> phase1(form.columns.size(), 0.0);
      for (std::size_t j = form.first_artificial; j < phase1.size(); ++j) phase1[j] = 1.0;
      simplex->Run(phase1, true);
      double scale = 1.0;
      for (double b : form.rhs) scale = std::max(scale, std::abs(b));
      const double threshold =
          std::max(options.feasibility_tolerance, 1e-7) * scale;
      if (simplex->ArtificialMass() > threshold) {
        solution.status = LpStatus::kInfeasible;
        solution.iterations = simplex->iterations();
        return solution;
      }
      simplex->DriveOutArtificials();
    }
  }

  // Phase 2.
  if (simplex->Run(form.cost, false) == PhaseResult::kUnbounded) {
    solution.status = LpStatus::kUnbounded;
    solution.iterations = simplex->iterations();
    return solution;
  }
  simplex->Polish();

  const std::vector<double> columns = simplex->ColumnValues();
  const int n = problem.num_variables();
  solution.point.resize(n);
  for (int j = 0; j < n; ++j) {
    const auto& map = form.variables[j];
    solution.point[j] = map.offset + map.sign * columns[map.column];
  }
  double value = 0.0;
  for (int j = 0; j < n; ++j) value += problem.objective[j] * solution.point[j];
  solution.value = value;
  solution.dual_point.resize(form.original_rows);
  const auto& y = simplex->duals();
  for (int i = 0; i < form.original_rows; ++i) {
    solution.dual_point[i] = form.objective_sign * form.row_sign[i] * y[i];
  }
  solution.status = LpStatus::kOptimal;
  solution.basis = simplex->Snapshot();
  solution.iterations = simplex->iterations();
  return solution;
}

double MaxViolation(const LpProblem& problem, const std::vector<double>& point) {
  double worst = 0.0;
  for (const auto& row : problem.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < point.size(); ++j) lhs += row.coefficients[j] * point[j];
    double v = 0.0;
    switch (row.relation) {
      case Relation::kLessEqual:
        v = lhs - row.rhs;
        break;
      case Relation::kGreaterEqual:
        v = row.rhs - lhs;
        break;
      case Relation::kEqual:
        v = std::abs(lhs - row.rhs);
        break;
    }
    worst = std::max(worst, v);
  }
  for (std::size_t j = 0; j < point.size(); ++j) {
    worst = std::max(worst, problem.bounds[j].lower - point[j]);
    worst = std::max(worst, point[j] - problem.bounds[j].upper);
  }
  return worst;
}

void WriteLp(const LpProblem& problem, std::ostream& out) {
  const int n = problem.num_variables();
  auto name = [&](int j) {
    return problem.names.empty() || problem.names[j].empty()
               ? "x" + std::to_string(j)
               : problem.names[j];
  };
  out << (problem.sense == ObjectiveSense::kMaximize ? "maximize" : "minimize");
  for (int j = 0; j < n; ++j) {
    if (problem.objective[j] != 0.0) {
      out << ' ' << FormatNumber(problem.objective[j]) << '*' << name(j);
    }
  }
  out << '\n';
  for (int i = 0; i < problem.num_constraints(); ++i) {
    const auto& row = problem.constraints[i];
    out << 'c' << i << ':';
    for (int j = 0; j < n; ++j) {
      if (row.coefficients[j] != 0.0) {
        out << ' ' << FormatNumber(row.coefficients[j]) << '*' << name(j);
      }
    }
    switch (row.relation) {
      case Relation::kLessEqual:
        out << " <= ";
        break;
      case Relation::kEqual:
        out << " = ";
        break;
      case Relation::kGreaterEqual:
        out << " >= ";
        break;
    }
    out << FormatNumber(row.rhs) << '\n';
  }
  for (int j = 0; j < n; ++j) {
    const auto& b = problem.bounds[j];
    out << "bound " << name(j) << ' ' << FormatNumber(b.lower) << ' '
        << FormatNumber(b.upper) << '\n';
  }
}

}  // namespace rbsolve
