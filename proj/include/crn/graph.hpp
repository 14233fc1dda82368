#pragma once

#include "crn/network.hpp"

namespace crn {

// Connectivity structure of the complex graph. Classes are listed in
// ascending order of their smallest complex index and each class is
// sorted, so the decomposition is a pure function of the network.
struct LinkageDecomposition {
  std::vector<std::vector<int>> linkage_classes;  // undirected components
  std::vector<std::vector<int>> strong_classes;   // strongly connected parts
  std::vector<int> linkage_of;                    // complex -> linkage class
  std::vector<int> strong_of;                     // complex -> strong class
  std::vector<bool> terminal;  // strong class has no edge leaving it

  int terminal_count() const;
};

// Self-reactions are ignored throughout: they neither connect anything
// nor let a strong class escape.
LinkageDecomposition decompose(const Network& net);

struct ClassStats {
  std::vector<int> complexes;
  int n = 0;           // complexes in the class
  int s = 0;           // dim span{ y_j - y_i : both in the class }
  int deficiency = 0;  // n - 1 - s
};

struct DeficiencyReport {
  int n = 0;
  int linkage_count = 0;
  int s = 0;           // rank of the reaction vectors
  int deficiency = 0;  // n - linkage_count - s
  int terminal_count = 0;
  std::vector<ClassStats> classes;
  bool weakly_reversible = false;

  // The one-theorem checklist: class deficiencies at most one, their sum
  // equal to the network deficiency, and exactly one terminal strong
  // class per linkage class. The weaker variant keeps only the sum.
  bool dot_deficiencies_bounded = false;
  bool dot_sum_matches = false;
  bool dot_terminal_matches = false;
  bool dot_satisfied = false;
  bool boros_satisfied = false;
};

DeficiencyReport deficiency_report(const Network& net);

// Rank of { y_target - y_source } over the non-self reactions.
int stoichiometric_dim(const Network& net);

// Rank of Y*A(K): the dimension the dynamics actually explores. Never
// exceeds stoichiometric_dim; equal whenever every linkage class has a
// single terminal strong class.
int kinetic_dim(const MassActionSystem& sys);

// Appends a complex that takes part only in its own self-reaction.
// Deficiency bookkeeping shifts (n and linkage_count grow by one) but
// every theorem verdict is unchanged.
Network add_isolated_complex(const Network& net, const Complex& c);

// Complexes whose incident reactions are all self-reactions.
std::vector<int> isolated_complexes(const Network& net);

// Removes the given complexes and every reaction touching them.
Network strip_complexes(const Network& net, const std::vector<int>& drop);

MassActionSystem strip_isolated(const MassActionSystem& sys);

}  // namespace crn
