#include "crn/simplex.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <utility>

namespace crn {

namespace {

// Consecutive degenerate steps tolerated before switching to Bland's rule.
constexpr int kStallLimit = 64;
// Pivots between column-list compactions.
constexpr int kColRebuildPeriod = 512;

}  // namespace

int LpProblem::add_col(std::optional<Rat> lo, std::optional<Rat> hi, Rat cost) {
  lb.push_back(std::move(lo));
  ub.push_back(std::move(hi));
  obj.push_back(std::move(cost));
  return ncols++;
}

const Rat* Simplex::SpVec::find(int j) const {
  auto it = std::lower_bound(idx.begin(), idx.end(), j);
  if (it == idx.end() || *it != j) return nullptr;
  return &val[static_cast<size_t>(it - idx.begin())];
}

void Simplex::SpVec::set(int j, const Rat& v) {
  auto it = std::lower_bound(idx.begin(), idx.end(), j);
  size_t p = static_cast<size_t>(it - idx.begin());
  if (it != idx.end() && *it == j) {
    val[p] = v;
  } else {
    idx.insert(it, j);
    val.insert(val.begin() + static_cast<std::ptrdiff_t>(p), v);
  }
}

Simplex::Simplex(const LpProblem& p) : prob_(p) {
  nstruct_ = p.ncols;
  nrows_ = static_cast<int>(p.rows.size());
  ntotal_ = nstruct_ + 2 * nrows_;
  if (static_cast<int>(p.lb.size()) != nstruct_ ||
      static_cast<int>(p.ub.size()) != nstruct_ ||
      static_cast<int>(p.obj.size()) != nstruct_)
    throw std::invalid_argument("simplex: bounds/objective size mismatch");
  for (const LpRow& row : p.rows)
    for (const auto& [j, a] : row.terms) {
      (void)a;
      if (j < 0 || j >= nstruct_)
        throw std::invalid_argument("simplex: row column index out of range");
    }
  lo_.assign(static_cast<size_t>(ntotal_), std::nullopt);
  hi_.assign(static_cast<size_t>(ntotal_), std::nullopt);
  cost_.assign(static_cast<size_t>(ntotal_), Rat(0));
  for (int j = 0; j < nstruct_; ++j) {
    lo_[j] = p.lb[j];
    hi_[j] = p.ub[j];
    cost_[j] = p.obj[j];
    if (cost_[j] != 0) obj_support_.push_back(j);
  }
  // Slack boxes encode the row sense: a*x + s = rhs with s >= 0 for <=,
  // s <= 0 for >=, s = 0 for equations. One artificial per row sits
  // pinned at zero until a cold start needs it.
  for (int r = 0; r < nrows_; ++r) {
    int s = nstruct_ + r, art = nstruct_ + nrows_ + r;
    switch (p.rows[r].sense) {
      case RowSense::LE: lo_[s] = Rat(0); break;
      case RowSense::GE: hi_[s] = Rat(0); break;
      case RowSense::EQ: lo_[s] = Rat(0); hi_[s] = Rat(0); break;
    }
    lo_[art] = Rat(0);
    hi_[art] = Rat(0);
  }
  stamp_.assign(static_cast<size_t>(nrows_), 0);
}

bool Simplex::fixed(int j) const {
  return lo_[j] && hi_[j] && *lo_[j] == *hi_[j];
}

Rat Simplex::bound_value(int j) const {
  switch (pos_[j]) {
    case Pos::AtLower: return *lo_[j];
    case Pos::AtUpper: return *hi_[j];
    case Pos::AtZero: return Rat(0);
    case Pos::Basic: break;
  }
  assert(false && "bound_value on a basic column");
  return Rat(0);
}

Rat Simplex::value_internal(int j) const {
  if (!rows_.empty() || started_) {
    if (row_of_[j] >= 0) return beta_[row_of_[j]];
    return bound_value(j);
  }
  if (lo_[j]) return *lo_[j];
  if (hi_[j]) return *hi_[j];
  return Rat(0);
}

Rat Simplex::value(int col) const {
  if (col < 0 || col >= nstruct_)
    throw std::invalid_argument("simplex: column out of range");
  return value_internal(col);
}

std::vector<Rat> Simplex::values() const {
  std::vector<Rat> v(static_cast<size_t>(nstruct_));
  for (int j = 0; j < nstruct_; ++j) v[j] = value_internal(j);
  return v;
}

Rat Simplex::objective() const {
  Rat z(0);
  for (int j : obj_support_) z += cost_[j] * value_internal(j);
  return z;
}

void Simplex::set_bounds(int col, const std::optional<Rat>& lo,
                         const std::optional<Rat>& hi) {
  if (col < 0 || col >= nstruct_)
    throw std::invalid_argument("simplex: column out of range");
  if (rows_.empty()) {  // no tableau yet, nothing to patch
    lo_[col] = lo;
    hi_[col] = hi;
    return;
  }
  if (pos_[col] == Pos::Basic) {
    lo_[col] = lo;
    hi_[col] = hi;
    return;
  }
  Rat old = bound_value(col);
  lo_[col] = lo;
  hi_[col] = hi;
  // Stay on the same side when it survives; nonbasic resting values
  // must always sit on an existing bound.
  Pos p = pos_[col];
  if (p == Pos::AtLower && !lo_[col])
    p = hi_[col] ? Pos::AtUpper : Pos::AtZero;
  else if (p == Pos::AtUpper && !hi_[col])
    p = lo_[col] ? Pos::AtLower : Pos::AtZero;
  else if (p == Pos::AtZero && (lo_[col] || hi_[col]))
    p = lo_[col] ? Pos::AtLower : Pos::AtUpper;
  pos_[col] = p;
  Rat now = bound_value(col);
  if (now != old) shift_nonbasic(col, now - old);
}

void Simplex::build_tableau() {
  rows_.assign(static_cast<size_t>(nrows_), SpVec{});
  col_rows_.assign(static_cast<size_t>(ntotal_), {});
  basis_.assign(static_cast<size_t>(nrows_), -1);
  row_of_.assign(static_cast<size_t>(ntotal_), -1);
  pos_.assign(static_cast<size_t>(ntotal_), Pos::AtLower);
  beta_.assign(static_cast<size_t>(nrows_), Rat(0));
  zrow_.assign(static_cast<size_t>(ntotal_), Rat(0));
  for (int r = 0; r < nrows_; ++r) {
    std::map<int, Rat> merged;
    for (const auto& [j, a] : prob_.rows[r].terms)
      if (a != 0) merged[j] += a;
    SpVec& row = rows_[r];
    for (const auto& [j, a] : merged) {
      if (a == 0) continue;
      row.idx.push_back(j);
      row.val.push_back(a);
      col_rows_[j].push_back(r);
    }
    row.idx.push_back(nstruct_ + r);
    row.val.push_back(Rat(1));
    col_rows_[nstruct_ + r].push_back(r);
    row.idx.push_back(nstruct_ + nrows_ + r);
    row.val.push_back(Rat(1));
    col_rows_[nstruct_ + nrows_ + r].push_back(r);
  }
  pivots_since_rebuild_ = 0;
  stamp_.assign(static_cast<size_t>(nrows_), 0);
  stamp_ctr_ = 0;
}

void Simplex::rebuild_col_rows() {
  for (auto& v : col_rows_) v.clear();
  for (int r = 0; r < nrows_; ++r)
    for (int j : rows_[r].idx) col_rows_[j].push_back(r);
  pivots_since_rebuild_ = 0;
}

void Simplex::rebuild_zrow(const std::vector<Rat>& cost) {
  zrow_ = cost;
  for (int r = 0; r < nrows_; ++r) {
    const Rat& cb = cost[basis_[r]];
    if (cb == 0) continue;
    const SpVec& row = rows_[r];
    for (size_t k = 0; k < row.idx.size(); ++k)
      zrow_[row.idx[k]] -= cb * row.val[k];
  }
  for (int r = 0; r < nrows_; ++r) zrow_[basis_[r]] = 0;
}

// beta = B^{-1}(b - N x_N): a nonbasic column moving by delta shifts
// every basic value against its tableau coefficient.
void Simplex::shift_nonbasic(int j, const Rat& delta) {
  ++stamp_ctr_;
  for (int i : col_rows_[j]) {
    if (stamp_[i] == stamp_ctr_) continue;  // duplicate occurrence
    stamp_[i] = stamp_ctr_;
    const Rat* a = rows_[i].find(j);
    if (!a) continue;  // stale occurrence
    beta_[i] -= *a * delta;
  }
}

void Simplex::axpy(SpVec& dst, const Rat& f, const SpVec& src, int dst_row) {
  scratch_idx_.clear();
  scratch_val_.clear();
  size_t a = 0, b = 0;
  while (a < dst.idx.size() || b < src.idx.size()) {
    if (b == src.idx.size() ||
        (a < dst.idx.size() && dst.idx[a] < src.idx[b])) {
      scratch_idx_.push_back(dst.idx[a]);
      scratch_val_.push_back(std::move(dst.val[a]));
      ++a;
    } else if (a == dst.idx.size() || src.idx[b] < dst.idx[a]) {
      Rat v = f * src.val[b];
      if (v != 0) {
        scratch_idx_.push_back(src.idx[b]);
        scratch_val_.push_back(std::move(v));
        col_rows_[src.idx[b]].push_back(dst_row);
      }
      ++b;
    } else {
      Rat v = dst.val[a] + f * src.val[b];
      if (v != 0) {
        scratch_idx_.push_back(dst.idx[a]);
        scratch_val_.push_back(std::move(v));
      }
      ++a;
      ++b;
    }
  }
  dst.idx.swap(scratch_idx_);
  dst.val.swap(scratch_val_);
}

void Simplex::pivot(int r, int q) {
  SpVec& prow = rows_[r];
  const Rat* pv = prow.find(q);
  assert(pv && *pv != 0);
  if (*pv != 1) {
    Rat inv = Rat(1) / *pv;
    for (Rat& v : prow.val) v *= inv;
  }
  // One elimination per distinct row: after the first pass the pivot
  // column entry cancels, so duplicate occurrences fall through find().
  std::vector<int> touchers = col_rows_[q];
  for (int i : touchers) {
    if (i == r) continue;
    const Rat* av = rows_[i].find(q);
    if (!av || *av == 0) continue;
    Rat coef = -(*av);
    axpy(rows_[i], coef, prow, i);
  }
  Rat zq = zrow_[q];
  if (zq != 0)
    for (size_t k = 0; k < prow.idx.size(); ++k)
      zrow_[prow.idx[k]] -= zq * prow.val[k];
  int old = basis_[r];
  row_of_[old] = -1;
  basis_[r] = q;
  row_of_[q] = r;
  pos_[q] = Pos::Basic;
  col_rows_[q].clear();
  col_rows_[q].push_back(r);
  if (++pivots_since_rebuild_ >= kColRebuildPeriod) rebuild_col_rows();
}

bool Simplex::primal_feasible() const {
  for (int r = 0; r < nrows_; ++r) {
    int k = basis_[r];
    if (lo_[k] && beta_[r] < *lo_[k]) return false;
    if (hi_[k] && beta_[r] > *hi_[k]) return false;
  }
  return true;
}

bool Simplex::dual_feasible() const {
  for (int j = 0; j < ntotal_; ++j) {
    if (pos_[j] == Pos::Basic || fixed(j)) continue;
    if (pos_[j] == Pos::AtLower && zrow_[j] < 0) return false;
    if (pos_[j] == Pos::AtUpper && zrow_[j] > 0) return false;
    if (pos_[j] == Pos::AtZero && zrow_[j] != 0) return false;
  }
  return true;
}

bool Simplex::out_of_time() const {
  return wall_deadline_ &&
         std::chrono::steady_clock::now() >= *wall_deadline_;
}

// Bounded-variable primal iteration. zrow_ must already match the cost
// vector being optimized (cold_start rebuilds it around the phases).
LpStatus Simplex::primal(std::int64_t deadline) {
  int stall = 0;
  while (true) {
    if (iters_ >= deadline || out_of_time()) return LpStatus::IterLimit;
    bool bland = stall >= kStallLimit;
    int q = -1;
    Rat best;
    for (int j = 0; j < ntotal_; ++j) {
      if (pos_[j] == Pos::Basic || fixed(j)) continue;
      const Rat& rc = zrow_[j];
      bool improving = (pos_[j] == Pos::AtLower && rc < 0) ||
                       (pos_[j] == Pos::AtUpper && rc > 0) ||
                       (pos_[j] == Pos::AtZero && rc != 0);
      if (!improving) continue;
      if (bland) {
        q = j;
        break;
      }
      Rat mag = abs(rc);
      if (q < 0 || mag > best) {
        q = j;
        best = mag;
      }
    }
    if (q < 0) return LpStatus::Optimal;
    int dir = pos_[q] == Pos::AtUpper ? -1
              : pos_[q] == Pos::AtZero ? (zrow_[q] < 0 ? 1 : -1)
                                       : 1;
    Rat cur = bound_value(q);
    bool has_theta = false;
    Rat theta;
    if (dir > 0 && hi_[q]) {
      theta = *hi_[q] - cur;
      has_theta = true;
    } else if (dir < 0 && lo_[q]) {
      theta = cur - *lo_[q];
      has_theta = true;
    }
    int block_row = -1, block_k = -1;
    ++stamp_ctr_;
    for (int i : col_rows_[q]) {
      if (stamp_[i] == stamp_ctr_) continue;
      stamp_[i] = stamp_ctr_;
      const Rat* ap = rows_[i].find(q);
      if (!ap || *ap == 0) continue;
      Rat rate = dir > 0 ? Rat(-*ap) : Rat(*ap);  // motion of the basic var
      int k = basis_[i];
      Rat cap;
      if (rate > 0) {
        if (!hi_[k]) continue;
        cap = (*hi_[k] - beta_[i]) / rate;
      } else {
        if (!lo_[k]) continue;
        cap = (beta_[i] - *lo_[k]) / -rate;
      }
      assert(cap >= 0 && "ratio test saw an infeasible basic value");
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
    Rat delta = dir > 0 ? theta : Rat(-theta);
    if (block_row < 0) {
      // the entering column hits its own opposite bound: a bound flip
      if (delta != 0) shift_nonbasic(q, delta);
      pos_[q] = dir > 0 ? Pos::AtUpper : Pos::AtLower;
      ++iters_;
      stall = theta == 0 ? stall + 1 : 0;
      continue;
    }
    Rat vnew = cur + delta;
    if (delta != 0) shift_nonbasic(q, delta);
    int k = basis_[block_row];
    const Rat* ab = rows_[block_row].find(q);
    Rat rate = dir > 0 ? Rat(-*ab) : Rat(*ab);
    pos_[k] = rate > 0 ? Pos::AtUpper : Pos::AtLower;
    pivot(block_row, q);
    beta_[block_row] = vnew;
    ++iters_;
    stall = theta == 0 ? stall + 1 : 0;
  }
}

// Dual iteration from a dual-feasible dictionary; used to repair primal
// feasibility after bound changes. Reports Infeasible when a violated
// row admits no entering column.
LpStatus Simplex::dual(std::int64_t deadline) {
  int stall = 0;
  while (true) {
    if (iters_ >= deadline || out_of_time()) return LpStatus::IterLimit;
    bool bland = stall >= kStallLimit;
    int r = -1, bestk = -1;
    bool below = false;
    Rat bestviol;
    for (int i = 0; i < nrows_; ++i) {
      int k = basis_[i];
      Rat viol;
      bool b;
      if (lo_[k] && beta_[i] < *lo_[k]) {
        viol = *lo_[k] - beta_[i];
        b = true;
      } else if (hi_[k] && beta_[i] > *hi_[k]) {
        viol = beta_[i] - *hi_[k];
        b = false;
      } else {
        continue;
      }
      if (bland) {
        if (r < 0 || k < bestk) {
          r = i;
          below = b;
          bestk = k;
        }
      } else if (r < 0 || viol > bestviol ||
                 (viol == bestviol && k < bestk)) {
        r = i;
        below = b;
        bestviol = viol;
        bestk = k;
      }
    }
    if (r < 0) return LpStatus::Optimal;
    int k = basis_[r];
    Rat target = below ? *lo_[k] : *hi_[k];
    int q = -1;
    Rat best_ratio;
    const SpVec& row = rows_[r];
    for (size_t t = 0; t < row.idx.size(); ++t) {
      int j = row.idx[t];
      if (pos_[j] == Pos::Basic || fixed(j)) continue;
      const Rat& a = row.val[t];
      bool ok;
      if (below)
        ok = (pos_[j] == Pos::AtLower && a < 0) ||
             (pos_[j] == Pos::AtUpper && a > 0) || pos_[j] == Pos::AtZero;
      else
        ok = (pos_[j] == Pos::AtLower && a > 0) ||
             (pos_[j] == Pos::AtUpper && a < 0) || pos_[j] == Pos::AtZero;
      if (!ok) continue;
      Rat ratio = abs(zrow_[j]) / abs(a);
      if (q < 0 || ratio < best_ratio) {
        q = j;
        best_ratio = ratio;
      }
    }
    if (q < 0) return LpStatus::Infeasible;
    const Rat* aq = row.find(q);
    Rat dq = (beta_[r] - target) / *aq;
    Rat vnew = bound_value(q) + dq;
    Rat dz = zrow_[q] * dq;
    if (dq != 0) shift_nonbasic(q, dq);
    pos_[k] = below ? Pos::AtLower : Pos::AtUpper;
    pivot(r, q);
    beta_[r] = vnew;
    ++iters_;
    stall = dz == 0 ? stall + 1 : 0;
  }
}

LpStatus Simplex::cold_start(std::int64_t deadline) {
  started_ = false;
  for (int j = 0; j < nstruct_; ++j)
    if (lo_[j] && hi_[j] && *lo_[j] > *hi_[j]) return LpStatus::Infeasible;
  build_tableau();
  // a previous failed start may have left artificials relaxed
  for (int r = 0; r < nrows_; ++r) {
    lo_[nstruct_ + nrows_ + r] = Rat(0);
    hi_[nstruct_ + nrows_ + r] = Rat(0);
  }
  for (int j = 0; j < ntotal_; ++j) {
    row_of_[j] = -1;
    pos_[j] = lo_[j] ? Pos::AtLower : (hi_[j] ? Pos::AtUpper : Pos::AtZero);
  }
  // Slack basis; rows whose slack demand falls outside its box get a
  // relaxed artificial carrying the violation instead.
  std::vector<Rat> phase1(static_cast<size_t>(ntotal_), Rat(0));
  bool need_phase1 = false;
  for (int r = 0; r < nrows_; ++r) {
    Rat t = prob_.rows[r].rhs;
    const SpVec& row = rows_[r];
    for (size_t x = 0; x < row.idx.size(); ++x)
      t -= row.val[x] * bound_value(row.idx[x]);
    int s = nstruct_ + r, art = nstruct_ + nrows_ + r;
    Rat sval = t;
    if (lo_[s] && sval < *lo_[s]) sval = *lo_[s];
    if (hi_[s] && sval > *hi_[s]) sval = *hi_[s];
    if (sval == t) {
      basis_[r] = s;
      row_of_[s] = r;
      pos_[s] = Pos::Basic;
      beta_[r] = t;
    } else {
      pos_[s] = lo_[s] && sval == *lo_[s] ? Pos::AtLower : Pos::AtUpper;
      Rat v = t - sval;
      lo_[art] = v < 0 ? v : Rat(0);
      hi_[art] = v > 0 ? v : Rat(0);
      phase1[art] = v > 0 ? Rat(1) : Rat(-1);
      basis_[r] = art;
      row_of_[art] = r;
      pos_[art] = Pos::Basic;
      beta_[r] = v;
      need_phase1 = true;
    }
  }
  if (need_phase1) {
    rebuild_zrow(phase1);
    LpStatus st = primal(deadline);
    if (st != LpStatus::Optimal) return st;
    Rat infeas(0);
    for (int r = 0; r < nrows_; ++r) {
      int art = nstruct_ + nrows_ + r;
      infeas += phase1[art] * value_internal(art);
    }
    if (infeas != 0) return LpStatus::Infeasible;
  }
  for (int r = 0; r < nrows_; ++r) {
    int art = nstruct_ + nrows_ + r;
    lo_[art] = Rat(0);
    hi_[art] = Rat(0);
    if (row_of_[art] < 0) pos_[art] = Pos::AtLower;
  }
  rebuild_zrow(cost_);
  LpStatus st = primal(deadline);
  if (st == LpStatus::Optimal) started_ = true;
  return st;
}

LpStatus Simplex::optimize(std::int64_t iter_budget) {
  std::int64_t deadline = iters_ + iter_budget;
  if (!started_) return cold_start(deadline);
  for (int j = 0; j < nstruct_; ++j)
    if (lo_[j] && hi_[j] && *lo_[j] > *hi_[j]) return LpStatus::Infeasible;
  if (!primal_feasible()) {
    if (!dual_feasible()) return cold_start(deadline);
    // dual() keeps the dictionary warm even when it proves infeasibility,
    // so a later bound relaxation can resume from here.
    return dual(deadline);
  }
  if (dual_feasible()) return LpStatus::Optimal;
  return primal(deadline);
}

bool Simplex::self_check() const {
  if (rows_.empty()) return true;
  // original rows hold exactly: a*x + slack + artificial = rhs
  for (int r = 0; r < nrows_; ++r) {
    Rat acc(0);
    for (const auto& [j, a] : prob_.rows[r].terms) acc += a * value_internal(j);
    acc += value_internal(nstruct_ + r);
    acc += value_internal(nstruct_ + nrows_ + r);
    if (acc != prob_.rows[r].rhs) return false;
  }
  // every column honours its box
  for (int j = 0; j < ntotal_; ++j) {
    Rat v = value_internal(j);
    if (lo_[j] && v < *lo_[j]) return false;
    if (hi_[j] && v > *hi_[j]) return false;
  }
  // dictionary invariants
  for (int r = 0; r < nrows_; ++r) {
    if (row_of_[basis_[r]] != r) return false;
    if (pos_[basis_[r]] != Pos::Basic) return false;
    if (zrow_[basis_[r]] != 0) return false;
    for (int r2 = 0; r2 < nrows_; ++r2) {
      const Rat* v = rows_[r2].find(basis_[r]);
      Rat want = r2 == r ? Rat(1) : Rat(0);
      if (v ? *v != want : want != 0) return false;
    }
  }
  for (int j = 0; j < ntotal_; ++j)
    if (pos_[j] == Pos::Basic && row_of_[j] < 0) return false;
  return true;
}

LpResult solve_lp(const LpProblem& p, std::int64_t iter_budget) {
  Simplex s(p);
  LpResult res;
  res.status = s.optimize(iter_budget);
  res.iterations = s.iterations();
  if (res.status == LpStatus::Optimal) {
    res.objective = s.objective();
    res.x = s.values();
  }
  return res;
}

}  // namespace crn
