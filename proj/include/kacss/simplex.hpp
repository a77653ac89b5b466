#pragma once

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kacss/errors.hpp"
#include "kacss/rational.hpp"

namespace kacss::lp {

enum class Relation { kGreaterEqual, kLessEqual, kEqual };
enum class Sense { kMinimize, kMaximize };
enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Term {
  std::size_t var = 0;
  Rational coef;
};

struct Row {
  std::vector<Term> terms;
  Relation relation = Relation::kGreaterEqual;
  Rational rhs;
};

/// Bounds are optional; an absent bound is infinite.
struct LinearProgram {
  Sense sense = Sense::kMinimize;
  std::vector<Rational> objective;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;
  std::vector<Row> rows;

  std::size_t num_variables() const { return objective.size(); }

  std::size_t add_variable(Rational cost, std::optional<Rational> lo = Rational(0),
                           std::optional<Rational> hi = std::nullopt) {
    objective.push_back(std::move(cost));
    lower.push_back(std::move(lo));
    upper.push_back(std::move(hi));
    return objective.size() - 1;
  }

  std::size_t add_row(std::vector<Term> terms, Relation relation, Rational rhs) {
    rows.push_back(Row{std::move(terms), relation, std::move(rhs)});
    return rows.size() - 1;
  }

  void validate() const {
    const std::size_t n = num_variables();
    if (lower.size() != n || upper.size() != n) throw std::invalid_argument("LinearProgram: bound vectors mis-sized");
    for (std::size_t j = 0; j < n; ++j)
      if (lower[j] && upper[j] && *lower[j] > *upper[j])
        throw std::invalid_argument("LinearProgram: lower bound exceeds upper bound");
    for (const Row& row : rows)
      for (const Term& t : row.terms)
        if (t.var >= n) throw std::invalid_argument("LinearProgram: row references unknown variable");
  }
};

/// Optimal basic solution with duals. Sign conventions follow the LP's own
/// sense: reduced_costs[j] = c_j - sum_i duals[i] * a_ij, and at a minimum a
/// tight >= row has a nonnegative dual (nonpositive at a maximum).
struct VertexSolution {
  Status status = Status::kInfeasible;
  std::vector<Rational> primal;
  Rational objective;
  std::vector<Rational> duals;
  std::vector<Rational> reduced_costs;
  std::vector<bool> basic_variables;
  std::vector<bool> basic_rows;
  std::size_t pivots = 0;
};

/// Bounded-variable primal/dual simplex over exact rationals, using Bland's
/// smallest-index rule throughout. The LP can be modified between calls to
/// optimize(); a modification that keeps the current basis primal feasible
/// (new column, new objective) resumes the primal simplex, and one that keeps
/// it dual feasible (new row, tightened bound) resumes the dual simplex.
/// Anything else rebuilds the two-phase method from the slack basis.
class Simplex {
 public:
  explicit Simplex(LinearProgram lp) : lp_(std::move(lp)) { lp_.validate(); }

  const LinearProgram& program() const { return lp_; }

  Status optimize() {
    if (!built_ || phase_one_failed_) return build_and_solve();
    if (primal_feasible()) return status_ = primal();
    if (dual_feasible()) {
      if (dual() == Status::kInfeasible) return status_ = Status::kInfeasible;
      return status_ = primal();
    }
    return build_and_solve();
  }

  Status status() const { return status_; }

  std::size_t add_row(std::vector<Term> terms, Relation relation, Rational rhs) {
    std::size_t r = lp_.add_row(std::move(terms), relation, std::move(rhs));
    lp_.validate();
    if (!built_) return r;
    std::size_t var = new_var(Kind::kRow);
    row_var_.push_back(var);
    set_row_bounds(var, lp_.rows[r]);
    std::vector<Rational> coefs(nonbasic_.size());
    Rational activity = 0;
    for (const Term& t : lp_.rows[r].terms) {
      std::size_t v = structural_var_[t.var];
      activity += t.coef * value_[v];
      if (pos_[v].basic) {
        const auto& src = dict_[pos_[v].index];
        for (std::size_t c = 0; c < src.size(); ++c)
          if (!src[c].is_zero()) coefs[c] += t.coef * src[c];
      } else {
        coefs[pos_[v].index] += t.coef;
      }
    }
    value_[var] = activity;
    pos_[var] = {true, basis_.size()};
    basis_.push_back(var);
    dict_.push_back(std::move(coefs));
    return r;
  }

  /// Adds a structural column; `column` holds (row index, coefficient) pairs.
  std::size_t add_column(Rational cost, std::optional<Rational> lo, std::optional<Rational> hi,
                         const std::vector<Term>& column) {
    std::size_t j = lp_.add_variable(cost, lo, hi);
    for (const Term& t : column) {
      if (t.var >= lp_.rows.size()) throw std::invalid_argument("add_column: unknown row");
      lp_.rows[t.var].terms.push_back(Term{j, t.coef});
    }
    lp_.validate();
    if (!built_) return j;
    std::size_t var = new_var(Kind::kStructural);
    structural_var_.push_back(var);
    lower_[var] = lo;
    upper_[var] = hi;
    cost_[var] = internal_cost(cost);
    value_[var] = initial_value(var);
    std::vector<Rational> entries(basis_.size());
    for (const Term& t : column) {
      std::size_t rv = row_var_[t.var];
      if (pos_[rv].basic) {
        entries[pos_[rv].index] += t.coef;
      } else {
        std::size_t c = pos_[rv].index;
        for (std::size_t i = 0; i < basis_.size(); ++i)
          if (!dict_[i][c].is_zero()) entries[i] -= t.coef * dict_[i][c];
      }
    }
    Rational reduced = cost_[var];
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (entries[i].is_zero()) continue;
      reduced += cost_[basis_[i]] * entries[i];
      if (!value_[var].is_zero()) value_[basis_[i]] += entries[i] * value_[var];
      dict_[i].push_back(std::move(entries[i]));
    }
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (dict_[i].size() == nonbasic_.size()) dict_[i].emplace_back();
    pos_[var] = {false, nonbasic_.size()};
    nonbasic_.push_back(var);
    reduced_.push_back(std::move(reduced));
    return j;
  }

  void set_objective(std::vector<Rational> objective) {
    if (objective.size() != lp_.num_variables()) throw std::invalid_argument("set_objective: size mismatch");
    lp_.objective = std::move(objective);
    if (!built_ || in_phase_one_) return;
    for (std::size_t j = 0; j < lp_.num_variables(); ++j) cost_[structural_var_[j]] = internal_cost(lp_.objective[j]);
    compute_reduced_costs();
  }

  void set_bounds(std::size_t j, std::optional<Rational> lo, std::optional<Rational> hi) {
    if (lo && hi && *lo > *hi) throw std::invalid_argument("set_bounds: empty interval");
    lp_.lower[j] = lo;
    lp_.upper[j] = hi;
    if (!built_) return;
    std::size_t var = structural_var_[j];
    bool was_at_upper = !pos_[var].basic && upper_[var] && value_[var] == *upper_[var] &&
                        !(lower_[var] && value_[var] == *lower_[var]);
    lower_[var] = std::move(lo);
    upper_[var] = std::move(hi);
    if (pos_[var].basic) return;
    Rational target = (was_at_upper && upper_[var]) ? *upper_[var] : initial_value(var);
    Rational delta = target - value_[var];
    if (delta.is_zero()) return;
    value_[var] = target;
    std::size_t c = pos_[var].index;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (!dict_[i][c].is_zero()) value_[basis_[i]] += dict_[i][c] * delta;
  }

  Rational value(std::size_t j) const { return value_.at(structural_var_.at(j)); }

  std::vector<Rational> primal_values() const {
    std::vector<Rational> x(lp_.num_variables());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = value_[structural_var_[j]];
    return x;
  }

  Rational objective_value() const {
    Rational z = 0;
    for (std::size_t j = 0; j < lp_.num_variables(); ++j) z += lp_.objective[j] * value_[structural_var_[j]];
    return z;
  }

  std::size_t pivots() const { return pivots_; }

  VertexSolution solution() const {
    VertexSolution s;
    s.status = status_;
    s.pivots = pivots_;
    if (status_ != Status::kOptimal) return s;
    const Rational flip = lp_.sense == Sense::kMaximize ? -1 : 1;
    s.primal = primal_values();
    s.objective = objective_value();
    for (std::size_t j = 0; j < lp_.num_variables(); ++j) {
      std::size_t var = structural_var_[j];
      s.basic_variables.push_back(pos_[var].basic);
      s.reduced_costs.push_back(pos_[var].basic ? Rational(0) : Rational(flip * reduced_[pos_[var].index]));
    }
    for (std::size_t i = 0; i < lp_.rows.size(); ++i) {
      std::size_t var = row_var_[i];
      s.basic_rows.push_back(pos_[var].basic);
      s.duals.push_back(pos_[var].basic ? Rational(0) : Rational(flip * reduced_[pos_[var].index]));
    }
    return s;
  }

  void set_pivot_limit(std::size_t limit) { pivot_limit_ = limit; }

 private:
  enum class Kind { kStructural, kRow, kArtificial };
  struct Position {
    bool basic = false;
    std::size_t index = 0;
  };

  std::size_t new_var(Kind kind) {
    kind_.push_back(kind);
    lower_.emplace_back();
    upper_.emplace_back();
    cost_.emplace_back();
    value_.emplace_back();
    pos_.emplace_back();
    return kind_.size() - 1;
  }

  Rational internal_cost(const Rational& c) const { return lp_.sense == Sense::kMaximize ? Rational(-c) : c; }

  Rational initial_value(std::size_t var) const {
    if (lower_[var]) return *lower_[var];
    if (upper_[var]) return *upper_[var];
    return 0;
  }

  void set_row_bounds(std::size_t var, const Row& row) {
    lower_[var].reset();
    upper_[var].reset();
    if (row.relation != Relation::kLessEqual) lower_[var] = row.rhs;
    if (row.relation != Relation::kGreaterEqual) upper_[var] = row.rhs;
  }

  bool below(std::size_t var) const { return lower_[var] && value_[var] < *lower_[var]; }
  bool above(std::size_t var) const { return upper_[var] && value_[var] > *upper_[var]; }
  bool can_increase(std::size_t var) const { return !upper_[var] || value_[var] < *upper_[var]; }
  bool can_decrease(std::size_t var) const { return !lower_[var] || value_[var] > *lower_[var]; }

  bool primal_feasible() const {
    return std::none_of(basis_.begin(), basis_.end(), [&](std::size_t v) { return below(v) || above(v); });
  }

  bool dual_feasible() const {
    for (std::size_t c = 0; c < nonbasic_.size(); ++c) {
      std::size_t v = nonbasic_[c];
      if (reduced_[c] < 0 && can_increase(v)) return false;
      if (reduced_[c] > 0 && can_decrease(v)) return false;
    }
    return true;
  }

  void compute_reduced_costs() {
    reduced_.assign(nonbasic_.size(), Rational(0));
    for (std::size_t c = 0; c < nonbasic_.size(); ++c) reduced_[c] = cost_[nonbasic_[c]];
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational& cb = cost_[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t c = 0; c < nonbasic_.size(); ++c)
        if (!dict_[i][c].is_zero()) reduced_[c] += cb * dict_[i][c];
    }
  }

  void count_pivot() {
    if (++pivots_ > pivot_limit_) throw InternalError("simplex: pivot limit exceeded");
  }

  // Exchanges basic row p with nonbasic column q.
  void pivot(std::size_t p, std::size_t q) {
    count_pivot();
    std::vector<Rational>& prow = dict_[p];
    const Rational inv = Rational(1) / prow[q];
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c < prow.size(); ++c) {
      if (c == q || prow[c].is_zero()) continue;
      prow[c] = -prow[c] * inv;
      nz.push_back(c);
    }
    prow[q] = inv;
    nz.push_back(q);
    auto eliminate = [&](std::vector<Rational>& row) {
      Rational f = row[q];
      if (f.is_zero()) return;
      for (std::size_t c : nz) {
        if (c == q)
          row[c] = f * prow[c];
        else
          row[c] += f * prow[c];
      }
    };
    for (std::size_t i = 0; i < dict_.size(); ++i)
      if (i != p) eliminate(dict_[i]);
    eliminate(reduced_);
    std::size_t leaving = basis_[p];
    std::size_t entering = nonbasic_[q];
    basis_[p] = entering;
    nonbasic_[q] = leaving;
    pos_[entering] = {true, p};
    pos_[leaving] = {false, q};
  }

  void shift_nonbasic(std::size_t q, const Rational& delta) {
    value_[nonbasic_[q]] += delta;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (!dict_[i][q].is_zero()) value_[basis_[i]] += dict_[i][q] * delta;
  }

  Status primal() {
    for (;;) {
      std::optional<std::size_t> q;
      for (std::size_t c = 0; c < nonbasic_.size(); ++c) {
        std::size_t v = nonbasic_[c];
        bool improving = (reduced_[c] < 0 && can_increase(v)) || (reduced_[c] > 0 && can_decrease(v));
        if (improving && (!q || v < nonbasic_[*q])) q = c;
      }
      if (!q) return Status::kOptimal;
      const std::size_t entering = nonbasic_[*q];
      const int dir = reduced_[*q] < 0 ? 1 : -1;

      // Ratio test; candidates identified by variable id for Bland tie-breaks.
      std::optional<Rational> best;
      std::optional<std::size_t> leave_row;
      std::size_t best_id = 0;
      auto offer = [&](Rational t, std::size_t id, std::optional<std::size_t> row) {
        if (!best || t < *best || (t == *best && id < best_id)) {
          best = std::move(t);
          best_id = id;
          leave_row = row;
        }
      };
      if (lower_[entering] && upper_[entering]) offer(*upper_[entering] - *lower_[entering], entering, std::nullopt);
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Rational& a = dict_[i][*q];
        if (a.is_zero()) continue;
        std::size_t b = basis_[i];
        Rational alpha = dir > 0 ? a : Rational(-a);
        if (alpha > 0 && upper_[b]) offer((*upper_[b] - value_[b]) / alpha, b, i);
        if (alpha < 0 && lower_[b]) offer((*lower_[b] - value_[b]) / alpha, b, i);
      }
      if (!best) return Status::kUnbounded;
      shift_nonbasic(*q, dir > 0 ? *best : Rational(-*best));
      if (!leave_row) {
        count_pivot();
        continue;
      }
      std::size_t b = basis_[*leave_row];
      Rational alpha = dir > 0 ? dict_[*leave_row][*q] : Rational(-dict_[*leave_row][*q]);
      value_[b] = alpha > 0 ? *upper_[b] : *lower_[b];
      pivot(*leave_row, *q);
    }
  }

  Status dual() {
    for (;;) {
      std::optional<std::size_t> p;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        std::size_t v = basis_[i];
        if ((below(v) || above(v)) && (!p || v < basis_[*p])) p = i;
      }
      if (!p) return Status::kOptimal;
      const std::size_t b = basis_[*p];
      const bool raise = below(b);
      const Rational target = raise ? *lower_[b] : *upper_[b];

      std::optional<std::size_t> q;
      Rational best_ratio;
      for (std::size_t c = 0; c < nonbasic_.size(); ++c) {
        const Rational& a = dict_[*p][c];
        if (a.is_zero()) continue;
        std::size_t v = nonbasic_[c];
        bool increase = (a > 0) == raise;
        if (increase ? !can_increase(v) : !can_decrease(v)) continue;
        Rational ratio = abs(reduced_[c] / a);
        if (!q || ratio < best_ratio || (ratio == best_ratio && v < nonbasic_[*q])) {
          q = c;
          best_ratio = std::move(ratio);
        }
      }
      if (!q) return Status::kInfeasible;
      Rational step = (target - value_[b]) / dict_[*p][*q];
      shift_nonbasic(*q, step);
      value_[b] = target;
      pivot(*p, *q);
    }
  }

  Status build_and_solve() {
    built_ = true;
    phase_one_failed_ = false;
    kind_.clear();
    lower_.clear();
    upper_.clear();
    cost_.clear();
    value_.clear();
    pos_.clear();
    structural_var_.clear();
    row_var_.clear();
    basis_.clear();
    nonbasic_.clear();
    dict_.clear();

    const std::size_t n = lp_.num_variables();
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t v = new_var(Kind::kStructural);
      structural_var_.push_back(v);
      lower_[v] = lp_.lower[j];
      upper_[v] = lp_.upper[j];
      value_[v] = initial_value(v);
      pos_[v] = {false, nonbasic_.size()};
      nonbasic_.push_back(v);
    }
    for (std::size_t r = 0; r < lp_.rows.size(); ++r) {
      std::size_t v = new_var(Kind::kRow);
      row_var_.push_back(v);
      set_row_bounds(v, lp_.rows[r]);
    }

    // Row dictionaries over the structural columns.
    std::vector<std::vector<Rational>> rows(lp_.rows.size(), std::vector<Rational>(n));
    for (std::size_t r = 0; r < lp_.rows.size(); ++r) {
      Rational activity = 0;
      for (const Term& t : lp_.rows[r].terms) {
        rows[r][t.var] += t.coef;
        activity += t.coef * value_[structural_var_[t.var]];
      }
      value_[row_var_[r]] = activity;
    }

    // Feasible rows start basic; each violated row gets an artificial that
    // absorbs the violation, with the row variable nonbasic at its bound.
    std::vector<std::size_t> violated;
    for (std::size_t r = 0; r < lp_.rows.size(); ++r) {
      std::size_t v = row_var_[r];
      if (below(v) || above(v)) violated.push_back(r);
    }
    const std::size_t width = n + violated.size();
    for (auto& row : rows) row.resize(width);
    std::vector<std::size_t> artificial_of(lp_.rows.size(), SIZE_MAX);
    for (std::size_t r : violated) {
      std::size_t rv = row_var_[r];
      pos_[rv] = {false, nonbasic_.size()};
      nonbasic_.push_back(rv);
      artificial_of[r] = new_var(Kind::kArtificial);
    }
    for (std::size_t r = 0; r < lp_.rows.size(); ++r) {
      std::size_t rv = row_var_[r];
      if (artificial_of[r] == SIZE_MAX) {
        pos_[rv] = {true, basis_.size()};
        basis_.push_back(rv);
        dict_.push_back(std::move(rows[r]));
        continue;
      }
      // art = sigma * (r - a.x) with r held at the violated bound.
      std::size_t art = artificial_of[r];
      const bool low = below(rv);
      const Rational sigma = low ? 1 : -1;
      Rational bound = low ? *lower_[rv] : *upper_[rv];
      value_[art] = sigma * (bound - value_[rv]);
      value_[rv] = bound;
      lower_[art] = Rational(0);
      std::vector<Rational> row(width);
      for (std::size_t c = 0; c < n; ++c)
        if (!rows[r][c].is_zero()) row[c] = -sigma * rows[r][c];
      row[pos_[rv].index] = sigma;
      cost_[art] = 1;
      pos_[art] = {true, basis_.size()};
      basis_.push_back(art);
      dict_.push_back(std::move(row));
    }

    if (!violated.empty()) {
      in_phase_one_ = true;
      compute_reduced_costs();
      primal();
      in_phase_one_ = false;
      Rational infeasibility = 0;
      for (std::size_t v = 0; v < kind_.size(); ++v)
        if (kind_[v] == Kind::kArtificial) infeasibility += value_[v];
      if (infeasibility > 0) {
        phase_one_failed_ = true;
        return status_ = Status::kInfeasible;
      }
      // Pivot basic artificials out where possible; the rest sit on redundant rows.
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (kind_[basis_[i]] != Kind::kArtificial) continue;
        for (std::size_t c = 0; c < nonbasic_.size(); ++c) {
          if (kind_[nonbasic_[c]] != Kind::kArtificial && !dict_[i][c].is_zero()) {
            pivot(i, c);
            break;
          }
        }
      }
      for (std::size_t v = 0; v < kind_.size(); ++v) {
        if (kind_[v] != Kind::kArtificial) continue;
        lower_[v] = Rational(0);
        upper_[v] = Rational(0);
        cost_[v] = 0;
      }
      drop_nonbasic_artificials();
    }

    for (std::size_t j = 0; j < n; ++j) cost_[structural_var_[j]] = internal_cost(lp_.objective[j]);
    compute_reduced_costs();
    return status_ = primal();
  }

  void drop_nonbasic_artificials() {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < nonbasic_.size(); ++c)
      if (kind_[nonbasic_[c]] != Kind::kArtificial) keep.push_back(c);
    if (keep.size() == nonbasic_.size()) return;
    for (auto& row : dict_) {
      std::vector<Rational> compact;
      compact.reserve(keep.size());
      for (std::size_t c : keep) compact.push_back(std::move(row[c]));
      row = std::move(compact);
    }
    std::vector<std::size_t> nb;
    for (std::size_t c : keep) nb.push_back(nonbasic_[c]);
    nonbasic_ = std::move(nb);
    for (std::size_t c = 0; c < nonbasic_.size(); ++c) pos_[nonbasic_[c]] = {false, c};
  }

  LinearProgram lp_;
  bool built_ = false;
  bool in_phase_one_ = false;
  bool phase_one_failed_ = false;
  Status status_ = Status::kInfeasible;
  std::size_t pivots_ = 0;
  std::size_t pivot_limit_ = 5'000'000;

  // Per internal variable (structurals, row activities, artificials).
  std::vector<Kind> kind_;
  std::vector<std::optional<Rational>> lower_;
  std::vector<std::optional<Rational>> upper_;
  std::vector<Rational> cost_;
  std::vector<Rational> value_;
  std::vector<Position> pos_;

  std::vector<std::size_t> structural_var_;
  std::vector<std::size_t> row_var_;

  // basic[i] = sum_c dict_[i][c] * nonbasic[c] + const; reduced_ is the
  // objective row over the same columns.
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonbasic_;
  std::vector<std::vector<Rational>> dict_;
  std::vector<Rational> reduced_;
};

/// One-shot solve from the slack basis.
inline VertexSolution solve(const LinearProgram& lp) {
  Simplex simplex(lp);
  simplex.optimize();
  return simplex.solution();
}

}  // namespace kacss::lp
