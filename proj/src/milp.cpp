#include "crn/milp.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace crn {

namespace {

using Clock = std::chrono::steady_clock;

// per-node LP iteration allowance; hitting it is reported as a limit
constexpr std::int64_t kLpBudgetPerNode = 5'000'000;

struct Undo {
  int col;
  std::optional<Rat> lo, hi;
};

// an absolute box to impose on a column (a branching decision)
struct Change {
  int col;
  std::optional<Rat> lo, hi;
};

class Solver {
 public:
  Solver(const MilpProblem& p, const MilpLimits& lim)
      : p_(p), lim_(lim), t0_(Clock::now()) {
    int n = p.lp.ncols;
    if (static_cast<int>(p.integral.size()) != n)
      throw std::invalid_argument("milp: integral mask size mismatch");
    prio_.assign(n, 0);
    if (!p.priority.empty()) {
      if (static_cast<int>(p.priority.size()) != n)
        throw std::invalid_argument("milp: priority size mismatch");
      prio_ = p.priority;
    }
    int m = static_cast<int>(p.lp.rows.size());
    merged_.resize(m);
    rows_of_.assign(n, {});
    for (int r = 0; r < m; ++r) {
      std::map<int, Rat> acc;
      for (const auto& [j, a] : p.lp.rows[r].terms)
        if (a != 0) acc[j] += a;
      for (const auto& [j, a] : acc) {
        if (a == 0) continue;
        merged_[r].emplace_back(j, a);
        rows_of_[j].push_back(r);
      }
    }
    for (int j = 0; j < n; ++j)
      if (p.integral[j]) int_vars_.push_back(j);
  }

  MilpResult run();

 private:
  struct Ctx {
    Simplex spx;
    std::vector<Undo> trail;
    unsigned epoch = 0;  // incumbent cache freshness
    bool has_inc = false;
    Rat inc_obj;
    explicit Ctx(const LpProblem& lp) : spx(lp) {}
    explicit Ctx(const Simplex& s) : spx(s) {}
  };

  struct Node {
    std::vector<Change> chain;  // branch decisions from the root
  };

  const MilpProblem& p_;
  MilpLimits lim_;
  Clock::time_point t0_;
  std::vector<int> prio_;
  std::vector<std::vector<std::pair<int, Rat>>> merged_;
  std::vector<std::vector<int>> rows_of_;
  std::vector<int> int_vars_;

  std::mutex inc_mu_;
  std::atomic<unsigned> inc_epoch_{0};
  bool has_inc_ = false;
  Rat inc_obj_;
  std::vector<Rat> inc_x_;
  std::atomic<std::int64_t> nodes_{0};
  std::atomic<std::int64_t> lp_iters_{0};
  std::atomic<bool> limit_hit_{false};
  std::atomic<bool> unbounded_{false};

  bool out_of_limits() {
    if (limit_hit_.load(std::memory_order_relaxed)) return true;
    if (lim_.max_nodes >= 0 &&
        nodes_.load(std::memory_order_relaxed) >= lim_.max_nodes) {
      limit_hit_.store(true, std::memory_order_relaxed);
      return true;
    }
    if (lim_.max_seconds >= 0) {
      double el = std::chrono::duration<double>(Clock::now() - t0_).count();
      if (el >= lim_.max_seconds) {
        limit_hit_.store(true, std::memory_order_relaxed);
        return true;
      }
    }
    return false;
  }

  void refresh_inc(Ctx& c) {
    unsigned e = inc_epoch_.load(std::memory_order_acquire);
    if (e == c.epoch) return;
    std::lock_guard<std::mutex> g(inc_mu_);
    c.has_inc = has_inc_;
    if (has_inc_) c.inc_obj = inc_obj_;
    c.epoch = inc_epoch_.load(std::memory_order_relaxed);
  }

  void offer_incumbent(const Rat& obj, std::vector<Rat> x) {
    std::lock_guard<std::mutex> g(inc_mu_);
    if (!has_inc_ || obj < inc_obj_) {
      has_inc_ = true;
      inc_obj_ = obj;
      inc_x_ = std::move(x);
      inc_epoch_.fetch_add(1, std::memory_order_release);
    }
  }

  void rewind(Ctx& c, size_t mark) {
    while (c.trail.size() > mark) {
      const Undo& u = c.trail.back();
      c.spx.set_bounds(u.col, u.lo, u.hi);
      c.trail.pop_back();
    }
  }

  void impose(Ctx& c, int col, const std::optional<Rat>& lo,
              const std::optional<Rat>& hi) {
    c.trail.push_back({col, c.spx.lower(col), c.spx.upper(col)});
    c.spx.set_bounds(col, lo, hi);
  }

  // One-row interval propagation to a fixpoint (capped), with floor/ceil
  // rounding on integral columns. Applies tightenings through the
  // simplex so the node relaxation sees them; false means the node box
  // crossed and the subtree is dead.
  bool fbbt(Ctx& c) {
    int m = static_cast<int>(merged_.size());
    if (m == 0) return true;
    std::vector<char> queued(m, 1);
    std::vector<int> queue(m);
    for (int i = 0; i < m; ++i) queue[i] = i;
    size_t head = 0, pops = 0;
    const size_t cap = 64 + 32 * static_cast<size_t>(m);
    auto tighten = [&](int j, bool upper, Rat v) -> int {
      if (p_.integral[j]) v = upper ? Rat(floor_int(v)) : Rat(ceil_int(v));
      std::optional<Rat> lo = c.spx.lower(j), hi = c.spx.upper(j);
      if (upper) {
        if (hi && *hi <= v) return 0;
        if (lo && *lo > v) return -1;
        c.trail.push_back({j, lo, hi});
        c.spx.set_bounds(j, lo, v);
      } else {
        if (lo && *lo >= v) return 0;
        if (hi && *hi < v) return -1;
        c.trail.push_back({j, lo, hi});
        c.spx.set_bounds(j, v, hi);
      }
      for (int r : rows_of_[j])
        if (!queued[r]) {
          queued[r] = 1;
          queue.push_back(r);
        }
      return 1;
    };
    while (head < queue.size()) {
      if (++pops > cap) break;  // sound to stop early
      int r = queue[head++];
      queued[r] = 0;
      RowSense sense = p_.lp.rows[r].sense;
      const Rat& rhs = p_.lp.rows[r].rhs;
      for (int pass = 0; pass < 2; ++pass) {
        bool as_le = pass == 0;  // treat as sum <= rhs, then sum >= rhs
        if (as_le ? sense == RowSense::GE : sense == RowSense::LE) continue;
        // extreme activity: minimum for <=, maximum for >=
        Rat ext(0);
        int infs = 0, infvar = -1;
        for (const auto& [j, a] : merged_[r]) {
          bool want_lo = (a > 0) == as_le;
          const auto& b = want_lo ? c.spx.lower(j) : c.spx.upper(j);
          if (!b) {
            ++infs;
            infvar = j;
          } else {
            ext += a * *b;
          }
        }
        if (infs == 0) {
          if (as_le && ext > rhs) return false;
          if (!as_le && ext < rhs) return false;
        }
        if (infs > 1) continue;
        for (const auto& [j, a] : merged_[r]) {
          Rat rest;
          if (infs == 0) {
            bool want_lo = (a > 0) == as_le;
            const auto& b = want_lo ? c.spx.lower(j) : c.spx.upper(j);
            rest = ext - a * *b;
          } else if (infvar == j) {
            rest = ext;
          } else {
            continue;
          }
          Rat v = (rhs - rest) / a;
          bool upper = (a > 0) == as_le;
          int got = tighten(j, upper, std::move(v));
          if (got < 0) return false;
        }
      }
    }
    return true;
  }

  int pick_branch(Ctx& c) {
    int best = -1, bprio = 0;
    Rat bdist;
    for (int j : int_vars_) {
      Rat v = c.spx.value(j);
      if (is_integer(v)) continue;
      Rat dist = abs(v - Rat(floor_int(v)) - Rat(1, 2));
      if (best < 0 || prio_[j] < bprio ||
          (prio_[j] == bprio && dist < bdist)) {
        best = j;
        bprio = prio_[j];
        bdist = dist;
      }
    }
    return best;
  }

  // Node bounds are already in place when dfs is entered; it restores
  // them on the way out via the trail mark.
  void dfs(Ctx& c) {
    if (out_of_limits()) return;
    nodes_.fetch_add(1, std::memory_order_relaxed);
    size_t mark = c.trail.size();
    LpStatus st = LpStatus::Infeasible;
    if (fbbt(c)) st = c.spx.optimize(kLpBudgetPerNode);
    if (st == LpStatus::IterLimit)
      limit_hit_.store(true, std::memory_order_relaxed);
    if (st == LpStatus::Unbounded) {
      unbounded_.store(true, std::memory_order_relaxed);
      limit_hit_.store(true, std::memory_order_relaxed);
    }
    if (st == LpStatus::Optimal) {
      Rat obj = c.spx.objective();
      refresh_inc(c);
      if (!(c.has_inc && obj >= c.inc_obj)) {
        int j = pick_branch(c);
        if (j < 0) {
          offer_incumbent(obj, c.spx.values());
          refresh_inc(c);
        } else {
          Rat fl(floor_int(c.spx.value(j)));
          bool up_first = c.spx.value(j) - fl >= Rat(1, 2);
          std::optional<Rat> lo = c.spx.lower(j), hi = c.spx.upper(j);
          for (int which = 0; which < 2; ++which) {
            bool up = (which == 0) == up_first;
            size_t m2 = c.trail.size();
            if (up)
              impose(c, j, Rat(fl + 1), hi);
            else
              impose(c, j, lo, fl);
            dfs(c);
            rewind(c, m2);
          }
        }
      }
    }
    rewind(c, mark);
  }

  // Expansion twin of dfs: instead of recursing it emits the children,
  // so the frontier can grow to one piece of work per thread.
  void expand(Ctx& c, const Node& nd, std::vector<Node>& out) {
    nodes_.fetch_add(1, std::memory_order_relaxed);
    size_t mark = c.trail.size();
    for (const Change& ch : nd.chain) impose(c, ch.col, ch.lo, ch.hi);
    LpStatus st = LpStatus::Infeasible;
    if (fbbt(c)) st = c.spx.optimize(kLpBudgetPerNode);
    if (st == LpStatus::IterLimit)
      limit_hit_.store(true, std::memory_order_relaxed);
    if (st == LpStatus::Unbounded) {
      unbounded_.store(true, std::memory_order_relaxed);
      limit_hit_.store(true, std::memory_order_relaxed);
    }
    if (st == LpStatus::Optimal) {
      Rat obj = c.spx.objective();
      refresh_inc(c);
      if (!(c.has_inc && obj >= c.inc_obj)) {
        int j = pick_branch(c);
        if (j < 0) {
          offer_incumbent(obj, c.spx.values());
        } else {
          Rat fl(floor_int(c.spx.value(j)));
          bool up_first = c.spx.value(j) - fl >= Rat(1, 2);
          std::optional<Rat> lo = c.spx.lower(j), hi = c.spx.upper(j);
          for (int which = 0; which < 2; ++which) {
            bool up = (which == 0) == up_first;
            Node child = nd;
            if (up)
              child.chain.push_back({j, Rat(fl + 1), hi});
            else
              child.chain.push_back({j, lo, fl});
            out.push_back(std::move(child));
          }
        }
      }
    }
    rewind(c, mark);
  }

  MilpResult collect() {
    MilpResult r;
    r.nodes = nodes_.load();
    r.lp_iterations = lp_iters_.load();
    if (unbounded_.load())
      throw std::domain_error("milp: LP relaxation is unbounded");
    std::lock_guard<std::mutex> g(inc_mu_);
    if (has_inc_) {
      r.has_solution = true;
      r.objective = inc_obj_;
      r.x = inc_x_;
    }
    if (limit_hit_.load())
      r.status = MilpStatus::Limit;
    else
      r.status = has_inc_ ? MilpStatus::Optimal : MilpStatus::Infeasible;
    return r;
  }
};

MilpResult Solver::run() {
  Ctx root(p_.lp);
  if (lim_.max_seconds >= 0)
    root.spx.set_deadline(
        t0_ + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(lim_.max_seconds)));
  int threads = lim_.threads;
#ifndef CRN_HAVE_OPENMP
  threads = 1;
#endif
  if (threads <= 1 || int_vars_.empty()) {
    dfs(root);
    lp_iters_.fetch_add(root.spx.iterations());
    return collect();
  }

  // Grow a frontier of independent subtrees, then farm them out.
  size_t target = 4 * static_cast<size_t>(threads);
  std::vector<Node> frontier;
  frontier.push_back({});
  size_t at = 0;
  while (frontier.size() - at < target && at < frontier.size() &&
         !out_of_limits()) {
    Node nd = std::move(frontier[at++]);
    expand(root, nd, frontier);
  }
  frontier.erase(frontier.begin(),
                 frontier.begin() + static_cast<std::ptrdiff_t>(at));
  lp_iters_.fetch_add(root.spx.iterations());

  std::int64_t root_iters = root.spx.iterations();
#ifdef CRN_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(frontier.size());
       ++t) {
    if (out_of_limits()) continue;
    Ctx c(root.spx);
    for (const Change& ch : frontier[t].chain)
      impose(c, ch.col, ch.lo, ch.hi);
    dfs(c);
    lp_iters_.fetch_add(c.spx.iterations() - root_iters);
  }
  return collect();
}

}  // namespace

MilpResult solve_milp(const MilpProblem& p, const MilpLimits& limits) {
  Solver s(p, limits);
  return s.run();
}

}  // namespace crn
