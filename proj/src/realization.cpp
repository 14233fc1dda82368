#include "crn/realization.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "crn/rng.hpp"

namespace crn {

namespace {

bool all_one(const std::vector<Rat>& c) {
  for (const Rat& v : c)
    if (v != 1) return false;
  return true;
}

}  // namespace

Realization decode_solution(const MilpModel& model,
                            const MassActionSystem& target,
                            const std::vector<Rat>& x) {
  const Network& net = target.net;
  if (net.complex_count() != model.ncomplexes ||
      net.species_count() != model.nspecies)
    throw std::invalid_argument(
        "decode_solution: model was built for a different network");
  if (int(x.size()) != model.var_count())
    throw std::invalid_argument(
        "decode_solution: solution vector has wrong length");

  const int m = model.nspecies, n = model.ncomplexes;
  Realization out;
  out.c.resize(m);
  for (int k = 0; k < m; ++k) {
    const Rat& dk = x[model.d(k)];
    if (dk <= 0)
      throw std::invalid_argument(
          "decode_solution: nonpositive scaling for species " +
          net.species[k]);
    out.c[k] = Rat(1) / dk;
  }

  // c^{y_i} per complex; with c = 1 it is all ones and no monomial is
  // ever formed, so dynamic equivalence works for any stoichiometry.
  std::vector<Rat> psi(n, Rat(1));
  if (!all_one(out.c)) psi = monomial_vector(net, out.c);

  out.sys.net.species = net.species;
  out.sys.net.complexes = net.complexes;
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rat& bij = x[model.b(i, j)];
      if (bij < 0)
        throw std::invalid_argument("decode_solution: negative rate variable " +
                                    model.var_names[model.b(i, j)]);
      if (bij == 0) continue;
      out.sys.net.reactions.push_back({i, j});
      out.sys.rates.push_back(bij * psi[i]);
      used[i] = used[j] = true;
    }
  for (int i = 0; i < n; ++i)
    if (!used[i]) {
      out.isolated.push_back(i);
      out.sys.net.reactions.push_back({i, i});
      out.sys.rates.push_back(Rat(1));
    }
  out.sys.validate(false);
  return out;
}

ConjugacyCheck verify_conjugacy(const MassActionSystem& original,
                                const MassActionSystem& candidate,
                                const std::vector<Rat>& c, int npoints,
                                std::uint64_t seed, int threads) {
  original.validate(false);
  candidate.validate(false);
  if (original.net.species != candidate.net.species)
    throw std::invalid_argument("verify_conjugacy: species lists differ");
  const int m = original.net.species_count();
  if (int(c.size()) != m)
    throw std::invalid_argument(
        "verify_conjugacy: one constant per species required");
  for (const Rat& v : c)
    if (v <= 0)
      throw std::invalid_argument(
          "verify_conjugacy: constants must be positive");
  if (npoints < 1)
    throw std::invalid_argument("verify_conjugacy: npoints must be positive");

  ConjugacyCheck out;

  // Route 1: columns of M = Y*A over the union of the complex sets. A
  // complex one side lacks contributes a zero column there.
  SystemMatrices orig = build_matrices(original);
  SystemMatrices cand = build_matrices(candidate);
  std::map<std::vector<Rat>, std::pair<int, int>> where;
  for (int i = 0; i < original.net.complex_count(); ++i)
    where[original.net.complexes[i].y] = {i, -1};
  for (int j = 0; j < candidate.net.complex_count(); ++j) {
    auto [it, fresh] =
        where.try_emplace(candidate.net.complexes[j].y, -1, j);
    if (!fresh) it->second.second = j;
  }
  Network unions;  // complex list only, to name columns and take powers
  unions.species = original.net.species;
  for (const auto& [y, at] : where) unions.complexes.push_back(Complex{y});
  std::vector<Rat> psi(unions.complexes.size(), Rat(1));
  if (!all_one(c)) psi = monomial_vector(unions, c);

  out.columns_ok = true;
  int u = 0;
  for (const auto& [y, at] : where) {
    const auto& [io, ic] = at;
    for (int k = 0; k < m; ++k) {
      Rat lhs = ic >= 0 ? cand.M(k, ic) : Rat(0);
      Rat rhs = io >= 0 ? Rat(psi[u] * orig.M(k, io) / c[k]) : Rat(0);
      if (lhs != rhs) {
        Rat gap = abs(Rat((lhs - rhs) / psi[u]));
        if (gap > out.residual) out.residual = gap;
        if (out.columns_ok) {
          out.columns_ok = false;
          out.failure = "kinetic column for " + unions.complex_name(u) +
                        " differs in species " + original.net.species[k];
        }
      }
    }
    ++u;
  }

  // Route 2: the trajectory identity f(x) = diag(c) f'(diag(1/c) x) at
  // random positive states, evaluated reaction by reaction on both sides.
  Rng rng(seed);
  std::vector<std::vector<Rat>> pts(npoints);
  for (auto& p : pts) {
    p.resize(m);
    for (int k = 0; k < m; ++k) p[k] = rng.rat_with_denominator(1, 24, 12);
  }
  auto point_ok = [&](int p) {
    std::vector<Rat> z(m);
    for (int k = 0; k < m; ++k) z[k] = pts[p][k] / c[k];
    std::vector<Rat> fx = mass_action_rhs(original, pts[p]);
    std::vector<Rat> fz = mass_action_rhs(candidate, z);
    for (int k = 0; k < m; ++k)
      if (fx[k] != c[k] * fz[k]) return k;
    return -1;
  };

#ifndef CRN_HAVE_OPENMP
  threads = 1;
#endif
  int bad_point = -1, bad_species = -1;
  if (threads <= 1) {
    for (int p = 0; p < npoints && bad_point < 0; ++p) {
      int k = point_ok(p);
      if (k >= 0) bad_point = p, bad_species = k;
    }
  } else {
#ifdef CRN_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int p = 0; p < npoints; ++p) {
      int k = point_ok(p);
      if (k >= 0) {
#pragma omp critical(crn_verify_first_bad)
        if (bad_point < 0 || p < bad_point) bad_point = p, bad_species = k;
      }
    }
#endif
  }
  out.points_ok = bad_point < 0;
  if (!out.points_ok && out.failure.empty())
    out.failure = "vector fields differ at sample " +
                  std::to_string(bad_point + 1) + " in species " +
                  original.net.species[bad_species];
  return out;
}

Certificate certify(const MassActionSystem& original, const Realization& real,
                    TheoremKind theorem, int npoints, std::uint64_t seed,
                    int threads) {
  Certificate cert;
  cert.theorem = theorem;
  cert.conjugacy =
      verify_conjugacy(original, real.sys, real.c, npoints, seed, threads);
  cert.dynamically_equivalent = all_one(real.c);
  cert.isolated = isolated_complexes(real.sys.net);
  cert.full = deficiency_report(real.sys.net);
  MassActionSystem core = strip_isolated(real.sys);
  cert.core = deficiency_report(core.net);
  cert.weakly_reversible = cert.core.weakly_reversible;

  // Self-looped spectators shift n and the class count together, so every
  // verdict below must come out the same with and without them.
  cert.lemma_consistent =
      cert.full.deficiency == cert.core.deficiency &&
      cert.full.weakly_reversible == cert.core.weakly_reversible &&
      cert.full.dot_satisfied == cert.core.dot_satisfied &&
      cert.full.boros_satisfied == cert.core.boros_satisfied;

  cert.theorem_ok = theorem == TheoremKind::DeficiencyOne
                        ? cert.core.dot_satisfied
                        : cert.core.boros_satisfied;
  cert.certified =
      cert.conjugacy.ok() && cert.theorem_ok && cert.lemma_consistent;

  if (!cert.conjugacy.ok()) {
    cert.conclusion =
        "candidate does not reproduce the target dynamics (" +
        cert.conjugacy.failure + ")";
  } else if (!cert.lemma_consistent) {
    cert.conclusion =
        "full and core structural verdicts disagree; certificate void";
  } else if (!cert.theorem_ok) {
    cert.conclusion = theorem == TheoremKind::DeficiencyOne
                          ? "deficiency-one conditions fail; no steady-state "
                            "conclusion from this realization"
                          : "class deficiencies do not sum to the network "
                            "deficiency; no steady-state conclusion";
  } else if (theorem == TheoremKind::DeficiencyOne) {
    cert.conclusion =
        cert.weakly_reversible
            ? "every positive stoichiometric compatibility class contains "
              "exactly one positive steady state, for every choice of rate "
              "constants"
            : "each positive stoichiometric compatibility class contains at "
              "most one positive steady state";
  } else {
    cert.conclusion =
        "if any stoichiometric compatibility class contains finitely many "
        "steady states, every class contains the same finite number";
  }
  return cert;
}

}  // namespace crn
