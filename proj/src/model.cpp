#include "crn/model.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "crn/rng.hpp"

namespace crn {

namespace {

// Draws distinct span-test coefficients, uniform over the rationals with
// denominator 10^6 lying in [sqrt(eps), 1/sqrt(eps)]. The endpoints are
// resolved exactly: t/10^6 >= sqrt(eps) iff t^2 * den >= 10^12 * num.
class DeltaSampler {
 public:
  DeltaSampler(const Rat& eps, std::uint64_t seed) : rng_(seed) {
    const Int sq = scale_ * scale_;
    const Int num = eps.get_num(), den = eps.get_den();

    Int wantlo = num * sq;  // smallest t with t^2 * den >= 10^12 * num
    lo_ = isqrt_floor(wantlo / den);
    while (lo_ * lo_ * den < wantlo) ++lo_;
    while (lo_ > 1 && (lo_ - 1) * (lo_ - 1) * den >= wantlo) --lo_;

    Int wanthi = den * sq;  // largest t with t^2 * num <= 10^12 * den
    hi_ = isqrt_floor(wanthi / num);
    while ((hi_ + 1) * (hi_ + 1) * num <= wanthi) ++hi_;
    while (hi_ > 0 && hi_ * hi_ * num > wanthi) --hi_;
  }

  Int width() const { return hi_ - lo_ + 1; }

  Rat draw() {
    Int w = width();
    // The range is ~2.8 million values at the default eps; cap the index
    // space rather than overflow if someone passes an absurdly tiny eps.
    std::uint64_t span =
        w.fits_ulong_p() ? std::uint64_t(w.get_ui()) : (std::uint64_t(1) << 62);
    for (;;) {
      Int t = lo_ + Int(static_cast<unsigned long>(rng_.below(span)));
      Rat v(t, scale_);
      v.canonicalize();
      if (used_.insert(v).second) return v;
    }
  }

 private:
  const Int scale_ = 1000000;
  Int lo_, hi_;
  Rng rng_;
  std::set<Rat> used_;
};

std::string nm(const char* stem, int a) {
  return std::string(stem) + "_" + std::to_string(a + 1);
}
std::string nm(const char* stem, int a, int b) {
  return nm(stem, a) + "_" + std::to_string(b + 1);
}
std::string nm(const char* stem, int a, int b, int c) {
  return nm(stem, a, b) + "_" + std::to_string(c + 1);
}

}  // namespace

MilpModel build_model(const Mat& y, const Mat& mm, int s, const ModelConfig& cfg) {
  if (y.rows() != mm.rows() || y.cols() != mm.cols())
    throw std::invalid_argument("model: Y and M shapes differ");
  const int m = y.rows(), n = y.cols();
  if (m < 1 || n < 2)
    throw std::invalid_argument("model: need at least one species and two complexes");
  if (cfg.eps <= 0 || cfg.eps >= 1)
    throw std::invalid_argument("model: eps must lie strictly inside (0, 1)");
  if (s < 0) throw std::invalid_argument("model: negative rank");
  const int nt = n - s;
  if (nt < 1) throw std::invalid_argument("model: no room for classes (n - s < 1)");

  MilpModel md;
  md.nspecies = m;
  md.ncomplexes = n;
  md.sdim = s;
  md.nclasses = nt;
  md.config = cfg;

  const Rat eps = cfg.eps;
  const Rat inv = Rat(1) / eps;

  DeltaSampler sampler(eps, cfg.seed);
  if (sampler.width() < n * (n - 1))
    throw std::invalid_argument("model: eps leaves too few distinct span coefficients");
  md.delta.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) md.delta[i][j] = sampler.draw();

  LpProblem& lp = md.prob.lp;

  // Branch on designated complexes first, then the class assignment, then
  // the span support; gammas are implied by the lambdas and go last.
  constexpr int kPrioC = 0, kPrioLam = 1, kPrioSp = 2, kPrioGam = 3, kPrioNone = 9;

  auto add_var = [&](std::string name, std::optional<Rat> lo, std::optional<Rat> hi,
                     Rat cost, bool is_int, int pr) {
    lp.add_col(std::move(lo), std::move(hi), std::move(cost));
    md.prob.integral.push_back(is_int);
    md.prob.priority.push_back(pr);
    md.var_names.push_back(std::move(name));
  };

  md.off_d = lp.ncols;
  for (int k = 0; k < m; ++k) {
    if (cfg.mode == ConjugacyMode::DynamicEquivalence)
      add_var(nm("d", k), Rat(1), Rat(1), Rat(0), false, kPrioNone);
    else
      add_var(nm("d", k), eps + eps * eps, inv, Rat(0), false, kPrioNone);
  }
  md.off_b = lp.ncols;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) add_var(nm("b", i, j), Rat(0), inv, Rat(0), false, kPrioNone);
  md.off_lam = lp.ncols;
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < nt; ++t)
      add_var(nm("lam", i, t), Rat(0), Rat(1), Rat(0), true, kPrioLam);
  md.off_gam = lp.ncols;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        for (int t = 0; t < nt; ++t)
          add_var(nm("gam", i, j, t), Rat(0), Rat(1), Rat(0), true, kPrioGam);
  md.off_s = lp.ncols;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        for (int t = 0; t < nt; ++t)
          add_var(nm("s", i, j, t), Rat(0), inv, Rat(0), false, kPrioNone);
  md.off_sp = lp.ncols;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        for (int t = 0; t < nt; ++t)
          add_var(nm("sp", i, j, t), Rat(0), Rat(1), Rat(0), true, kPrioSp);
  md.off_l = lp.ncols;
  for (int t = 0; t < nt; ++t)
    add_var(nm("l", t), Rat(0), Rat(1), Rat(-1), false, kPrioNone);
  md.off_w = lp.ncols;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) add_var(nm("w", i, j), Rat(0), std::nullopt, Rat(0), false, kPrioNone);
  md.off_wp = lp.ncols;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) add_var(nm("wp", i, j), Rat(0), std::nullopt, Rat(0), false, kPrioNone);
  md.off_c = lp.ncols;
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < nt; ++t)
      add_var(nm("c", i, t), Rat(0), Rat(1), Rat(0), true, kPrioC);
  md.off_cp = lp.ncols;
  for (int i = 0; i < n; ++i)
    add_var(nm("cp", i), Rat(0), Rat(1), Rat(0), false, kPrioNone);

  auto new_row = [&](std::string name, RowSense sense, Rat rhs) -> LpRow& {
    md.row_names.push_back(std::move(name));
    lp.rows.push_back(LpRow{{}, sense, std::move(rhs)});
    return lp.rows.back();
  };

  // Column i of Y * A(b) must match column i of diag(d) * M: the rates
  // leaving complex i reproduce the species-k kinetics up to the scaling d_k.
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < n; ++i) {
      LpRow& r = new_row(nm("lc", k, i), RowSense::EQ, Rat(0));
      for (int q = 0; q < n; ++q) {
        if (q == i) continue;
        Rat coef = y(k, q) - y(k, i);
        if (coef != 0) r.terms.emplace_back(md.b(i, q), std::move(coef));
      }
      if (mm(k, i) != 0) r.terms.emplace_back(md.d(k), -mm(k, i));
    }

  // A rate from i to j survives only when no class separates them.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int t = 0; t < nt; ++t) {
        LpRow& r = new_row(nm("link", i, j, t), RowSense::LE, inv);
        r.terms.emplace_back(md.b(i, j), Rat(1));
        r.terms.emplace_back(md.lam(i, t), -inv);
        r.terms.emplace_back(md.lam(j, t), inv);
      }
    }

  // Every complex sits in exactly one class.
  for (int i = 0; i < n; ++i) {
    LpRow& r = new_row(nm("onecls", i), RowSense::EQ, Rat(1));
    for (int t = 0; t < nt; ++t) r.terms.emplace_back(md.lam(i, t), Rat(1));
  }

  // l_t may rise to 1 only when class t is populated, and must leave zero
  // as soon as it is; the objective then counts populated classes.
  for (int t = 0; t < nt; ++t) {
    LpRow& r = new_row(nm("lmin", t), RowSense::GE, Rat(0));
    for (int i = 0; i < n; ++i) r.terms.emplace_back(md.lam(i, t), Rat(1));
    r.terms.emplace_back(md.l(t), -eps);
  }
  for (int t = 0; t < nt; ++t) {
    LpRow& r = new_row(nm("lmax", t), RowSense::GE, Rat(0));
    for (int i = 0; i < n; ++i) r.terms.emplace_back(md.lam(i, t), Rat(-1));
    r.terms.emplace_back(md.l(t), inv);
  }

  // Classes are interchangeable; insist that class t is first used by a
  // complex no later than the t-th, which kills the permutation symmetry.
  for (int t = 0; t < nt; ++t)
    for (int i = t; i < n; ++i) {
      LpRow& r = new_row(nm("sym", t, i), RowSense::GE, Rat(0));
      for (int j = 0; j <= i; ++j) r.terms.emplace_back(md.lam(j, t), Rat(1));
      for (int l = t + 1; l < nt; ++l) r.terms.emplace_back(md.lam(i, l), Rat(-1));
    }

  // Span certificate plumbing: s_i_j_t is switched by sp_i_j_t, which in
  // turn needs the pair inside class t (gam tracks the conjunction of the
  // two lambdas exactly).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int t = 0; t < nt; ++t) {
        LpRow& r = new_row(nm("spgam", i, j, t), RowSense::LE, Rat(0));
        r.terms.emplace_back(md.sp(i, j, t), Rat(1));
        r.terms.emplace_back(md.gam(i, j, t), Rat(-1));
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int t = 0; t < nt; ++t) {
        LpRow& r = new_row(nm("smax", i, j, t), RowSense::LE, Rat(0));
        r.terms.emplace_back(md.sv(i, j, t), Rat(1));
        r.terms.emplace_back(md.sp(i, j, t), -inv);
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int t = 0; t < nt; ++t) {
        LpRow& r = new_row(nm("smin", i, j, t), RowSense::GE, Rat(0));
        r.terms.emplace_back(md.sv(i, j, t), Rat(1));
        r.terms.emplace_back(md.sp(i, j, t), -eps);
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int t = 0; t < nt; ++t) {
        LpRow& r = new_row(nm("gmax", i, j, t), RowSense::LE, Rat(1) - 2 * eps);
        r.terms.emplace_back(md.gam(i, j, t), Rat(1));
        r.terms.emplace_back(md.lam(i, t), -eps);
        r.terms.emplace_back(md.lam(j, t), -eps);
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int t = 0; t < nt; ++t) {
        LpRow& r = new_row(nm("gmin", i, j, t), RowSense::GE, -eps);
        r.terms.emplace_back(md.gam(i, j, t), Rat(1));
        r.terms.emplace_back(md.lam(i, t), -eps);
        r.terms.emplace_back(md.lam(j, t), -eps);
      }
    }

  // The s weights must reproduce a random combination of the class's own
  // difference vectors. A generic right-hand side rules out lucky
  // cancellations, so the switched-on count measures the class span.
  for (int t = 0; t < nt; ++t)
    for (int k = 0; k < m; ++k) {
      LpRow& r = new_row(nm("span", t, k), RowSense::EQ, Rat(0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          Rat coef = y(k, j) - y(k, i);
          if (coef == 0) continue;
          r.terms.emplace_back(md.sv(i, j, t), coef);
          r.terms.emplace_back(md.gam(i, j, t), -md.delta[i][j] * coef);
        }
    }

  // Per-class deficiency cap (population - 1 - span <= 1), then the exact
  // split of the total rank across classes.
  if (cfg.theorem == TheoremKind::DeficiencyOne)
    for (int t = 0; t < nt; ++t) {
      LpRow& r = new_row(nm("dot", t), RowSense::LE, Rat(2));
      for (int i = 0; i < n; ++i) r.terms.emplace_back(md.lam(i, t), Rat(1));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) r.terms.emplace_back(md.sp(i, j, t), Rat(-1));
    }
  {
    LpRow& r = new_row("ssum", RowSense::EQ, Rat(s));
    for (int t = 0; t < nt; ++t)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) r.terms.emplace_back(md.sp(i, j, t), Rat(1));
  }

  // Designated complexes: at most one per class, drawn from its members.
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < nt; ++t) {
      LpRow& r = new_row(nm("cmem", i, t), RowSense::LE, Rat(0));
      r.terms.emplace_back(md.c(i, t), Rat(1));
      r.terms.emplace_back(md.lam(i, t), Rat(-1));
    }
  for (int t = 0; t < nt; ++t) {
    LpRow& r = new_row(nm("cone", t), RowSense::LE, Rat(1));
    for (int i = 0; i < n; ++i) r.terms.emplace_back(md.c(i, t), Rat(1));
  }
  for (int i = 0; i < n; ++i) {
    LpRow& r = new_row(nm("cdef", i), RowSense::EQ, Rat(0));
    r.terms.emplace_back(md.cp(i), Rat(1));
    for (int t = 0; t < nt; ++t) r.terms.emplace_back(md.c(i, t), Rat(-1));
  }

  // w shadows the support of b; wp adds circulation leaving designated
  // complexes, confined to their class. Conservation then makes every
  // reaction arc part of a closed walk through its class's designated
  // complex, which is what the one-terminal-part condition needs.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      LpRow& r = new_row(nm("wlo", i, j), RowSense::GE, Rat(0));
      r.terms.emplace_back(md.w(i, j), Rat(1));
      r.terms.emplace_back(md.b(i, j), -eps);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      LpRow& r = new_row(nm("whi", i, j), RowSense::LE, Rat(0));
      r.terms.emplace_back(md.w(i, j), Rat(1));
      r.terms.emplace_back(md.b(i, j), -inv);
    }
  const Rat wpcap = cfg.scaled_wprime ? inv : Rat(1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      LpRow& r = new_row(nm("wpcap", i, j), RowSense::LE, Rat(0));
      r.terms.emplace_back(md.wp(i, j), Rat(1));
      r.terms.emplace_back(md.cp(i), -wpcap);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int t = 0; t < nt; ++t) {
        LpRow& r = new_row(nm("wplink", i, j, t), RowSense::LE, inv);
        r.terms.emplace_back(md.wp(i, j), Rat(1));
        r.terms.emplace_back(md.lam(i, t), -inv);
        r.terms.emplace_back(md.lam(j, t), inv);
      }
    }
  for (int i = 0; i < n; ++i) {
    LpRow& r = new_row(nm("flow", i), RowSense::EQ, Rat(0));
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      r.terms.emplace_back(md.w(i, j), Rat(1));
      r.terms.emplace_back(md.wp(i, j), Rat(1));
      r.terms.emplace_back(md.w(j, i), Rat(-1));
      r.terms.emplace_back(md.wp(j, i), Rat(-1));
    }
  }

  return md;
}

}  // namespace crn
