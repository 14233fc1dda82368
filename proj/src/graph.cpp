#include "crn/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace crn {
namespace {

// Canonical class order: ascending smallest member, members sorted.
std::vector<std::vector<int>> canonical_classes(const std::vector<int>& of,
                                                int count) {
  std::vector<std::vector<int>> classes(count);
  for (int i = 0; i < int(of.size()); ++i) classes[of[i]].push_back(i);
  for (auto& c : classes) std::sort(c.begin(), c.end());
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

void renumber(const std::vector<std::vector<int>>& classes, std::vector<int>& of) {
  for (int c = 0; c < int(classes.size()); ++c)
    for (int i : classes[c]) of[i] = c;
}

}  // namespace

int LinkageDecomposition::terminal_count() const {
  int t = 0;
  for (bool b : terminal) t += b;
  return t;
}

LinkageDecomposition decompose(const Network& net) {
  int n = net.complex_count();
  std::vector<std::vector<int>> out(n), in(n), undirected(n);
  for (const Reaction& r : net.reactions) {
    if (r.source == r.target) continue;
    out[r.source].push_back(r.target);
    undirected[r.source].push_back(r.target);
    undirected[r.target].push_back(r.source);
  }

  LinkageDecomposition d;
  d.linkage_of.assign(n, -1);

  // Undirected components by plain depth-first search.
  int lc = 0;
  for (int seed = 0; seed < n; ++seed) {
    if (d.linkage_of[seed] >= 0) continue;
    std::vector<int> stack{seed};
    d.linkage_of[seed] = lc;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : undirected[v])
        if (d.linkage_of[w] < 0) {
          d.linkage_of[w] = lc;
          stack.push_back(w);
        }
    }
    ++lc;
  }
  d.linkage_classes = canonical_classes(d.linkage_of, lc);
  renumber(d.linkage_classes, d.linkage_of);

  // Tarjan's strongly connected components, iterative.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> scc_stack;
  int next_index = 0, scc_count = 0;
  struct Frame {
    int v;
    size_t child;
  };
  for (int seed = 0; seed < n; ++seed) {
    if (index[seed] >= 0) continue;
    std::vector<Frame> call{{seed, 0}};
    index[seed] = low[seed] = next_index++;
    scc_stack.push_back(seed);
    on_stack[seed] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < out[f.v].size()) {
        int w = out[f.v][f.child++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          scc_stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          int w;
          do {
            w = scc_stack.back();
            scc_stack.pop_back();
            on_stack[w] = false;
            comp[w] = scc_count;
          } while (w != f.v);
          ++scc_count;
        }
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  d.strong_of = comp;
  d.strong_classes = canonical_classes(d.strong_of, scc_count);
  renumber(d.strong_classes, d.strong_of);

  d.terminal.assign(scc_count, true);
  for (const Reaction& r : net.reactions)
    if (r.source != r.target && d.strong_of[r.source] != d.strong_of[r.target])
      d.terminal[d.strong_of[r.source]] = false;

  return d;
}

int stoichiometric_dim(const Network& net) {
  int m = net.species_count();
  std::vector<const Reaction*> rs;
  for (const Reaction& r : net.reactions)
    if (r.source != r.target) rs.push_back(&r);
  Mat diff(m, int(rs.size()));
  for (int j = 0; j < int(rs.size()); ++j)
    for (int k = 0; k < m; ++k)
      diff(k, j) =
          net.complexes[rs[j]->target].y[k] - net.complexes[rs[j]->source].y[k];
  return diff.rank();
}

int kinetic_dim(const MassActionSystem& sys) {
  return build_matrices(sys).M.rank();
}

DeficiencyReport deficiency_report(const Network& net) {
  LinkageDecomposition d = decompose(net);
  DeficiencyReport rep;
  rep.n = net.complex_count();
  rep.linkage_count = int(d.linkage_classes.size());
  rep.s = stoichiometric_dim(net);
  rep.deficiency = rep.n - rep.linkage_count - rep.s;
  rep.terminal_count = d.terminal_count();

  int m = net.species_count();
  int sum_class_def = 0;
  bool bounded = true;
  for (const auto& members : d.linkage_classes) {
    ClassStats cs;
    cs.complexes = members;
    cs.n = int(members.size());
    // Differences against a base complex span the same space as all
    // intra-class pairs.
    Mat diff(m, cs.n - 1);
    for (int j = 1; j < cs.n; ++j)
      for (int k = 0; k < m; ++k)
        diff(k, j - 1) =
            net.complexes[members[j]].y[k] - net.complexes[members[0]].y[k];
    cs.s = diff.rank();
    cs.deficiency = cs.n - 1 - cs.s;
    sum_class_def += cs.deficiency;
    bounded = bounded && cs.deficiency <= 1;
    rep.classes.push_back(std::move(cs));
  }

  rep.weakly_reversible = d.strong_classes.size() == d.linkage_classes.size();
  rep.dot_deficiencies_bounded = bounded;
  rep.dot_sum_matches = sum_class_def == rep.deficiency;
  rep.dot_terminal_matches = rep.terminal_count == rep.linkage_count;
  rep.dot_satisfied = rep.dot_deficiencies_bounded && rep.dot_sum_matches &&
                      rep.dot_terminal_matches;
  rep.boros_satisfied = rep.dot_sum_matches;
  return rep;
}

Network add_isolated_complex(const Network& net, const Complex& c) {
  if (int(c.y.size()) != net.species_count())
    throw std::invalid_argument("complex sized for a different species list");
  if (net.find_complex(c) >= 0)
    throw std::invalid_argument("complex already present");
  Network out = net;
  out.complexes.push_back(c);
  out.reactions.push_back({out.complex_count() - 1, out.complex_count() - 1});
  return out;
}

std::vector<int> isolated_complexes(const Network& net) {
  std::vector<bool> connected(net.complex_count(), false);
  for (const Reaction& r : net.reactions)
    if (r.source != r.target)
      connected[r.source] = connected[r.target] = true;
  std::vector<int> iso;
  for (int i = 0; i < net.complex_count(); ++i)
    if (!connected[i]) iso.push_back(i);
  return iso;
}

Network strip_complexes(const Network& net, const std::vector<int>& drop) {
  std::set<int> dropped(drop.begin(), drop.end());
  Network out;
  out.species = net.species;
  std::vector<int> remap(net.complex_count(), -1);
  for (int i = 0; i < net.complex_count(); ++i) {
    if (dropped.count(i)) continue;
    remap[i] = out.complex_count();
    out.complexes.push_back(net.complexes[i]);
  }
  for (const Reaction& r : net.reactions)
    if (remap[r.source] >= 0 && remap[r.target] >= 0)
      out.reactions.push_back({remap[r.source], remap[r.target]});
  return out;
}

MassActionSystem strip_isolated(const MassActionSystem& sys) {
  std::set<int> dropped;
  for (int i : isolated_complexes(sys.net)) dropped.insert(i);
  MassActionSystem out;
  out.net.species = sys.net.species;
  std::vector<int> remap(sys.net.complex_count(), -1);
  for (int i = 0; i < sys.net.complex_count(); ++i) {
    if (dropped.count(i)) continue;
    remap[i] = out.net.complex_count();
    out.net.complexes.push_back(sys.net.complexes[i]);
  }
  for (size_t r = 0; r < sys.net.reactions.size(); ++r) {
    const Reaction& rx = sys.net.reactions[r];
    if (remap[rx.source] >= 0 && remap[rx.target] >= 0) {
      out.net.reactions.push_back({remap[rx.source], remap[rx.target]});
      out.rates.push_back(sys.rates[r]);
    }
  }
  return out;
}

}  // namespace crn
