#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "crn/rational.hpp"

namespace crn {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

enum class RowSense { LE, GE, EQ };

struct LpRow {
  std::vector<std::pair<int, Rat>> terms;  // (column, coefficient)
  RowSense sense = RowSense::LE;
  Rat rhs;
};

// minimize obj.x subject to the rows and lb <= x <= ub; a missing bound
// means unbounded on that side.
struct LpProblem {
  int ncols = 0;
  std::vector<std::optional<Rat>> lb, ub;
  std::vector<Rat> obj;
  std::vector<LpRow> rows;

  int add_col(std::optional<Rat> lo, std::optional<Rat> hi, Rat cost = Rat(0));
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat objective;
  std::vector<Rat> x;
  std::int64_t iterations = 0;
};

// Exact bounded-variable simplex over sparse rational tableau rows.
//
// Cold starts run a two-phase primal: the slack basis, patched with one
// artificial column per violated row, minimizes total infeasibility
// first and then the real objective. After bound changes (branch and
// bound) the reduced costs are untouched, so a warm dual simplex
// restores feasibility without starting over.
//
// Pivoting rules are deterministic: Dantzig pricing (most negative
// reduced cost, ties to the smallest column) switching to Bland's rule
// after a degeneracy stall, largest-violation dual row selection
// switching to smallest-index likewise. Exact arithmetic everywhere;
// cycling is ruled out by the Bland fallback.
class Simplex {
 public:
  explicit Simplex(const LpProblem& p);

  // Replaces a structural column's box. Keeps the basis; the next
  // optimize() call repairs feasibility.
  void set_bounds(int col, const std::optional<Rat>& lo,
                  const std::optional<Rat>& hi);
  const std::optional<Rat>& lower(int col) const { return lo_[col]; }
  const std::optional<Rat>& upper(int col) const { return hi_[col]; }

  LpStatus optimize(std::int64_t iter_budget = 50'000'000);

  // Wall-clock cutoff honored inside the iteration loops and reported as
  // IterLimit; single exact pivots at scale run long, so an outer check
  // between solves is not enough. Copies keep the deadline.
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> t) {
    wall_deadline_ = t;
  }

  Rat objective() const;
  Rat value(int col) const;
  std::vector<Rat> values() const;  // structural columns only
  std::int64_t iterations() const { return iters_; }

  // Exact consistency audit against the original problem data: every
  // row holds, every value is inside its box, basic bookkeeping agrees.
  // Test support; not called on the hot path.
  bool self_check() const;

 private:
  struct SpVec {
    std::vector<int> idx;
    std::vector<Rat> val;
    const Rat* find(int j) const;
    void set(int j, const Rat& v);
  };

  enum class Pos : unsigned char { Basic, AtLower, AtUpper, AtZero };

  int nstruct_ = 0, nrows_ = 0, ntotal_ = 0;
  std::vector<std::optional<Rat>> lo_, hi_;  // all columns
  std::vector<Rat> cost_;                    // phase-2 costs, all columns
  std::vector<int> obj_support_;             // columns with nonzero cost
  LpProblem prob_;                           // original data for audits

  std::vector<SpVec> rows_;                // current dictionary rows
  std::vector<std::vector<int>> col_rows_; // rows possibly touching a column
  std::vector<int> basis_;                 // row -> basic column
  std::vector<int> row_of_;                // column -> row, -1 if nonbasic
  std::vector<Pos> pos_;                   // nonbasic side (Basic for basic)
  std::vector<Rat> beta_;                  // basic values
  std::vector<Rat> zrow_;                  // reduced costs, all columns
  bool started_ = false;
  std::int64_t iters_ = 0;
  std::optional<std::chrono::steady_clock::time_point> wall_deadline_;

  // scratch state: duplicate-row stamps, axpy buffers, compaction clock
  std::vector<std::int64_t> stamp_;
  std::int64_t stamp_ctr_ = 0;
  std::vector<int> scratch_idx_;
  std::vector<Rat> scratch_val_;
  int pivots_since_rebuild_ = 0;

  Rat bound_value(int j) const;  // nonbasic resting value
  Rat value_internal(int j) const;
  bool fixed(int j) const;

  void build_tableau();
  void rebuild_col_rows();
  void rebuild_zrow(const std::vector<Rat>& cost);
  void axpy(SpVec& dst, const Rat& f, const SpVec& src, int dst_row);
  void pivot(int row, int col);
  void shift_nonbasic(int j, const Rat& delta);

  LpStatus primal(std::int64_t deadline);
  LpStatus dual(std::int64_t deadline);
  LpStatus cold_start(std::int64_t deadline);
  bool out_of_time() const;

  bool primal_feasible() const;
  bool dual_feasible() const;
};

LpResult solve_lp(const LpProblem& p, std::int64_t iter_budget = 50'000'000);

}  // namespace crn
