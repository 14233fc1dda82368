#include "crn/polynomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace crn {

void PolynomialSystem::normalize() {
  for (auto& poly : rhs) {
    std::map<std::vector<long>, Rat> acc;
    for (const PolyTerm& t : poly) {
      if (int(t.exp.size()) != int(vars.size()))
        throw std::invalid_argument("term exponent vector has wrong length");
      acc[t.exp] += t.coeff;
    }
    poly.clear();
    for (auto& [exp, c] : acc)
      if (c != 0) poly.push_back({c, exp});
  }
}

bool PolynomialSystem::operator==(const PolynomialSystem& o) const {
  if (vars != o.vars || rhs.size() != o.rhs.size()) return false;
  for (size_t i = 0; i < rhs.size(); ++i) {
    if (rhs[i].size() != o.rhs[i].size()) return false;
    for (size_t j = 0; j < rhs[i].size(); ++j)
      if (rhs[i][j].coeff != o.rhs[i][j].coeff || rhs[i][j].exp != o.rhs[i][j].exp)
        return false;
  }
  return true;
}

std::string PolynomialSystem::term_name(const PolyTerm& t) const {
  std::string out = rational_string(t.coeff);
  for (size_t k = 0; k < vars.size(); ++k) {
    if (t.exp[k] == 0) continue;
    out += "*" + vars[k];
    if (t.exp[k] != 1) out += "^" + std::to_string(t.exp[k]);
  }
  return out;
}

MassActionSystem canonical_realization(const PolynomialSystem& input) {
  PolynomialSystem p = input;
  p.normalize();

  int m = int(p.vars.size());
  MassActionSystem sys;
  sys.net.species = p.vars;

  auto complex_index = [&](const std::vector<long>& exp) {
    Complex c;
    c.y.reserve(m);
    for (long e : exp) c.y.emplace_back(e);
    int idx = sys.net.find_complex(c);
    if (idx < 0) {
      sys.net.complexes.push_back(std::move(c));
      idx = sys.net.complex_count() - 1;
    }
    return idx;
  };

  // (source, target) -> rate; merged in case distinct terms collapse.
  std::map<std::pair<int, int>, Rat> rate_of;
  std::vector<std::pair<int, int>> order;
  for (int i = 0; i < m; ++i) {
    for (const PolyTerm& t : p.rhs[i]) {
      for (long e : t.exp)
        if (e < 0)
          throw std::invalid_argument("negative exponent in " + p.term_name(t));
      if (t.coeff < 0 && t.exp[i] < 1)
        throw std::invalid_argument(
            "term " + p.term_name(t) + " in d" + p.vars[i] +
            "/dt consumes a species absent from its monomial");
      int src = complex_index(t.exp);
      std::vector<long> tgt_exp = t.exp;
      tgt_exp[i] += t.coeff > 0 ? 1 : -1;
      int tgt = complex_index(tgt_exp);
      auto key = std::make_pair(src, tgt);
      if (rate_of.emplace(key, 0).second) order.push_back(key);
      rate_of[key] += abs(t.coeff);
    }
  }

  for (const auto& key : order) {
    sys.net.reactions.push_back({key.first, key.second});
    sys.rates.push_back(rate_of[key]);
  }
  sys.validate(false);
  return sys;
}

PolynomialSystem polynomial_of(const MassActionSystem& sys) {
  const Network& net = sys.net;
  if (!net.has_integer_stoichiometry())
    throw std::domain_error("polynomial_of needs integer stoichiometry");
  PolynomialSystem p;
  p.vars = net.species;
  p.rhs.resize(net.species_count());
  for (size_t r = 0; r < net.reactions.size(); ++r) {
    int s = net.reactions[r].source, t = net.reactions[r].target;
    if (s == t) continue;
    std::vector<long> exp(net.species_count());
    for (int k = 0; k < net.species_count(); ++k)
      exp[k] = net.complexes[s].y[k].get_num().get_si();
    for (int k = 0; k < net.species_count(); ++k) {
      Rat d = net.complexes[t].y[k] - net.complexes[s].y[k];
      if (d != 0) p.rhs[k].push_back({sys.rates[r] * d, exp});
    }
  }
  p.normalize();
  return p;
}

}  // namespace crn
