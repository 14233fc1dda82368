#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "crn/milp.hpp"

namespace crn {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kFeasTol = 1e-9;    // bound and row feasibility
constexpr double kCostTol = 1e-9;    // reduced-cost optimality
constexpr double kPivotTol = 1e-9;   // smallest usable pivot element
constexpr double kPhase1Tol = 1e-7;  // total leftover artificial mass
constexpr double kIntTol = 1e-6;     // integrality rounding
constexpr int kStallLimit = 64;
constexpr std::int64_t kLpBudgetPerNode = 200'000;

enum class Pos : unsigned char { Basic, AtLower, AtUpper, AtZero };

struct Box {
  bool has_lo = false, has_hi = false;
  double lo = 0, hi = 0;
};

// Dense double twin of the exact Simplex: the same column layout
// (structural, slacks, artificials), the same two-phase primal cold
// start, with every exact comparison replaced by a tolerance. Bland's
// rule loses its cycling guarantee under tolerances, so the iteration
// budget is the real backstop.
class FloatLp {
 public:
  FloatLp(const LpProblem& p, const std::vector<Box>& boxes,
          std::int64_t budget)
      : n_(p.ncols),
        m_(static_cast<int>(p.rows.size())),
        ntotal_(p.ncols + 2 * static_cast<int>(p.rows.size())),
        budget_(budget) {
    R_.assign(m_, std::vector<double>(ntotal_, 0.0));
    box_.resize(ntotal_);
    rhs_.resize(m_);
    cost_.assign(ntotal_, 0.0);
    for (int j = 0; j < n_; ++j) {
      box_[j] = boxes[j];
      cost_[j] = p.obj[j].get_d();
    }
    for (int r = 0; r < m_; ++r) {
      for (const auto& [j, a] : p.rows[r].terms) R_[r][j] += a.get_d();
      R_[r][n_ + r] = 1.0;
      R_[r][n_ + m_ + r] = 1.0;
      rhs_[r] = p.rows[r].rhs.get_d();
      Box s;
      switch (p.rows[r].sense) {
        case RowSense::LE: s.has_lo = true; break;  // slack in [0, inf)
        case RowSense::GE: s.has_hi = true; break;  // slack in (-inf, 0]
        case RowSense::EQ: s.has_lo = s.has_hi = true; break;
      }
      box_[n_ + r] = s;
      box_[n_ + m_ + r] = Box{true, true, 0, 0};
    }
  }

  LpStatus solve() {
    for (int j = 0; j < n_; ++j)
      if (box_[j].has_lo && box_[j].has_hi &&
          box_[j].lo > box_[j].hi + kFeasTol)
        return LpStatus::Infeasible;
    row_of_.assign(ntotal_, -1);
    basis_.assign(m_, -1);
    beta_.assign(m_, 0.0);
    pos_.resize(ntotal_);
    for (int j = 0; j < ntotal_; ++j)
      pos_[j] = box_[j].has_lo   ? Pos::AtLower
                : box_[j].has_hi ? Pos::AtUpper
                                 : Pos::AtZero;
    // Slack basis; rows whose slack demand falls outside its box get a
    // relaxed artificial carrying the violation instead.
    std::vector<double> phase1(ntotal_, 0.0);
    bool need1 = false;
    for (int r = 0; r < m_; ++r) {
      double t = rhs_[r];
      for (int j = 0; j < n_; ++j)
        if (R_[r][j] != 0) t -= R_[r][j] * rest(j);
      int s = n_ + r, art = n_ + m_ + r;
      double sval = t;
      if (box_[s].has_lo && sval < box_[s].lo) sval = box_[s].lo;
      if (box_[s].has_hi && sval > box_[s].hi) sval = box_[s].hi;
      if (sval == t) {
        basis_[r] = s;
        row_of_[s] = r;
        pos_[s] = Pos::Basic;
        beta_[r] = t;
      } else {
        pos_[s] = box_[s].has_lo && sval == box_[s].lo ? Pos::AtLower
                                                       : Pos::AtUpper;
        double v = t - sval;
        box_[art] = v < 0 ? Box{true, true, v, 0} : Box{true, true, 0, v};
        phase1[art] = v > 0 ? 1.0 : -1.0;
        basis_[r] = art;
        row_of_[art] = r;
        pos_[art] = Pos::Basic;
        beta_[r] = v;
        need1 = true;
      }
    }
    if (need1) {
      rebuild_zrow(phase1);
      LpStatus st = primal();
      if (st != LpStatus::Optimal) return st;
      double infeas = 0;
      for (int r = 0; r < m_; ++r) {
        int art = n_ + m_ + r;
        infeas += phase1[art] * val(art);
      }
      if (infeas > kPhase1Tol) return LpStatus::Infeasible;
    }
    for (int r = 0; r < m_; ++r) box_[n_ + m_ + r] = Box{true, true, 0, 0};
    rebuild_zrow(cost_);
    return primal();
  }

  double objective() const {
    double o = 0;
    for (int j = 0; j < n_; ++j)
      if (cost_[j] != 0) o += cost_[j] * val(j);
    return o;
  }

  double value(int j) const { return val(j); }

 private:
  int n_, m_, ntotal_;
  std::int64_t budget_, iters_ = 0;
  std::vector<std::vector<double>> R_;
  std::vector<Box> box_;
  std::vector<double> rhs_, cost_, zrow_, beta_;
  std::vector<int> basis_, row_of_;
  std::vector<Pos> pos_;

  bool fixed(int j) const {
    return box_[j].has_lo && box_[j].has_hi && box_[j].hi - box_[j].lo <= 0;
  }

  double rest(int j) const {
    switch (pos_[j]) {
      case Pos::AtLower: return box_[j].lo;
      case Pos::AtUpper: return box_[j].hi;
      default: return 0.0;
    }
  }

  double val(int j) const {
    return row_of_[j] >= 0 ? beta_[row_of_[j]] : rest(j);
  }

  void rebuild_zrow(const std::vector<double>& cost) {
    zrow_ = cost;
    for (int r = 0; r < m_; ++r) {
      double cb = cost[basis_[r]];
      if (cb == 0) continue;
      const std::vector<double>& Rr = R_[r];
      for (int j = 0; j < ntotal_; ++j) zrow_[j] -= cb * Rr[j];
    }
    for (int r = 0; r < m_; ++r) zrow_[basis_[r]] = 0.0;
  }

  void shift(int q, double delta) {
    for (int i = 0; i < m_; ++i)
      if (R_[i][q] != 0) beta_[i] -= R_[i][q] * delta;
  }

  void pivot(int r, int q) {
    row_of_[basis_[r]] = -1;
    std::vector<double>& Rr = R_[r];
    double inv = 1.0 / Rr[q];
    for (int j = 0; j < ntotal_; ++j) Rr[j] *= inv;
    Rr[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double f = R_[i][q];
      if (f == 0) continue;
      std::vector<double>& Ri = R_[i];
      for (int j = 0; j < ntotal_; ++j) Ri[j] -= f * Rr[j];
      Ri[q] = 0.0;
    }
    double zf = zrow_[q];
    if (zf != 0) {
      for (int j = 0; j < ntotal_; ++j) zrow_[j] -= zf * Rr[j];
      zrow_[q] = 0.0;
    }
    basis_[r] = q;
    row_of_[q] = r;
    pos_[q] = Pos::Basic;
  }

  LpStatus primal() {
    int stall = 0;
    while (true) {
      if (iters_ >= budget_) return LpStatus::IterLimit;
      bool bland = stall >= kStallLimit;
      int q = -1;
      double best = 0;
      for (int j = 0; j < ntotal_; ++j) {
        if (pos_[j] == Pos::Basic || fixed(j)) continue;
        double rc = zrow_[j];
        bool improving = (pos_[j] == Pos::AtLower && rc < -kCostTol) ||
                         (pos_[j] == Pos::AtUpper && rc > kCostTol) ||
                         (pos_[j] == Pos::AtZero && std::abs(rc) > kCostTol);
        if (!improving) continue;
        if (bland) {
          q = j;
          break;
        }
        double mag = std::abs(rc);
        if (q < 0 || mag > best) {
          q = j;
          best = mag;
        }
      }
      if (q < 0) return LpStatus::Optimal;
      int dir = pos_[q] == Pos::AtUpper  ? -1
                : pos_[q] == Pos::AtZero ? (zrow_[q] < 0 ? 1 : -1)
                                         : 1;
      double cur = rest(q);
      bool has_theta = false;
      double theta = 0;
      if (dir > 0 && box_[q].has_hi) {
        theta = box_[q].hi - cur;
        has_theta = true;
      } else if (dir < 0 && box_[q].has_lo) {
        theta = cur - box_[q].lo;
        has_theta = true;
      }
      int block_row = -1, block_k = -1;
      for (int i = 0; i < m_; ++i) {
        double a = R_[i][q];
        if (std::abs(a) <= kPivotTol) continue;
        double rate = dir > 0 ? -a : a;  // motion of the basic var
        int k = basis_[i];
        double cap;
        if (rate > 0) {
          if (!box_[k].has_hi) continue;
          cap = (box_[k].hi - beta_[i]) / rate;
        } else {
          if (!box_[k].has_lo) continue;
          cap = (beta_[i] - box_[k].lo) / -rate;
        }
        if (cap < 0) cap = 0;  // float noise on a degenerate basic
        if (!has_theta || cap < theta) {
          theta = cap;
          has_theta = true;
          block_row = i;
          block_k = k;
        } else if (cap == theta && block_row >= 0 && k < block_k) {
          block_row = i;
          block_k = k;
        }
      }
      if (!has_theta) return LpStatus::Unbounded;
      double delta = dir > 0 ? theta : -theta;
      if (block_row < 0) {
        // the entering column hits its own opposite bound: a bound flip
        if (delta != 0) shift(q, delta);
        pos_[q] = dir > 0 ? Pos::AtUpper : Pos::AtLower;
        ++iters_;
        stall = theta <= kFeasTol ? stall + 1 : 0;
        continue;
      }
      double vnew = cur + delta;
      if (delta != 0) shift(q, delta);
      int k = basis_[block_row];
      double a = R_[block_row][q];
      double rate = dir > 0 ? -a : a;
      pos_[k] = rate > 0 ? Pos::AtUpper : Pos::AtLower;
      pivot(block_row, q);
      beta_[block_row] = vnew;
      ++iters_;
      stall = theta <= kFeasTol ? stall + 1 : 0;
    }
  }
};

// DFS branch and bound over cold float LP solves. No FBBT, no warm
// starts, no frontier: at float speed the plain tree is enough for the
// sizes the benchmark feeds it.
class FloatSolver {
 public:
  FloatSolver(const MilpProblem& p, const MilpLimits& lim)
      : p_(p), lim_(lim), t0_(Clock::now()) {
    int n = p.lp.ncols;
    if (static_cast<int>(p.integral.size()) != n)
      throw std::invalid_argument("milp: integral mask size mismatch");
    boxes_.resize(n);
    for (int j = 0; j < n; ++j) {
      Box b;
      if (p.lp.lb[j]) {
        b.has_lo = true;
        b.lo = p.lp.lb[j]->get_d();
      }
      if (p.lp.ub[j]) {
        b.has_hi = true;
        b.hi = p.lp.ub[j]->get_d();
      }
      boxes_[j] = b;
    }
    prio_.assign(n, 0);
    if (!p.priority.empty()) {
      if (static_cast<int>(p.priority.size()) != n)
        throw std::invalid_argument("milp: priority size mismatch");
      prio_ = p.priority;
    }
  }

  FloatMilpResult run() {
    dfs();
    if (unbounded_) throw std::domain_error("milp: LP relaxation is unbounded");
    FloatMilpResult r;
    r.nodes = nodes_;
    if (has_inc_) {
      r.has_solution = true;
      r.objective = inc_obj_;
      r.x = inc_x_;
    }
    r.status = limit_        ? MilpStatus::Limit
               : r.has_solution ? MilpStatus::Optimal
                                : MilpStatus::Infeasible;
    return r;
  }

 private:
  const MilpProblem& p_;
  MilpLimits lim_;
  Clock::time_point t0_;
  std::vector<Box> boxes_;
  std::vector<int> prio_;
  std::int64_t nodes_ = 0;
  bool limit_ = false, unbounded_ = false;
  bool has_inc_ = false;
  double inc_obj_ = 0;
  std::vector<double> inc_x_;

  bool out_of_limits() {
    if (lim_.max_nodes >= 0 && nodes_ >= lim_.max_nodes) return true;
    if (lim_.max_seconds >= 0 &&
        std::chrono::duration<double>(Clock::now() - t0_).count() >=
            lim_.max_seconds)
      return true;
    return false;
  }

  void dfs() {
    if (limit_ || unbounded_) return;
    if (out_of_limits()) {
      limit_ = true;
      return;
    }
    ++nodes_;
    FloatLp lp(p_.lp, boxes_, kLpBudgetPerNode);
    LpStatus st = lp.solve();
    if (st == LpStatus::IterLimit) {
      limit_ = true;
      return;
    }
    if (st == LpStatus::Unbounded) {
      unbounded_ = true;
      return;
    }
    if (st != LpStatus::Optimal) return;
    double obj = lp.objective();
    if (has_inc_ && obj >= inc_obj_ - kFeasTol) return;

    int jb = -1, bprio = 0;
    double bdist = 0;
    for (int j = 0; j < p_.lp.ncols; ++j) {
      if (!p_.integral[j]) continue;
      double v = lp.value(j);
      double f = v - std::floor(v);
      if (std::min(f, 1 - f) <= kIntTol) continue;
      double dist = std::abs(f - 0.5);
      if (jb < 0 || prio_[j] < bprio || (prio_[j] == bprio && dist < bdist)) {
        jb = j;
        bprio = prio_[j];
        bdist = dist;
      }
    }
    if (jb < 0) {
      std::vector<double> x(p_.lp.ncols);
      for (int j = 0; j < p_.lp.ncols; ++j) {
        x[j] = lp.value(j);
        if (p_.integral[j]) x[j] = std::round(x[j]);
      }
      has_inc_ = true;
      inc_obj_ = obj;
      inc_x_ = std::move(x);
      return;
    }

    double fl = std::floor(lp.value(jb));
    bool up_first = lp.value(jb) - fl >= 0.5;
    Box save = boxes_[jb];
    for (int which = 0; which < 2; ++which) {
      bool up = (which == 0) == up_first;
      Box b = save;
      if (up) {
        b.has_lo = true;
        b.lo = fl + 1;
      } else {
        b.has_hi = true;
        b.hi = fl;
      }
      boxes_[jb] = b;
      dfs();
      boxes_[jb] = save;
    }
  }
};

}  // namespace

FloatMilpResult solve_milp_float(const MilpProblem& p,
                                 const MilpLimits& limits) {
  FloatSolver s(p, limits);
  return s.run();
}

}  // namespace crn
