#include "crn/network.hpp"

#include <set>
#include <stdexcept>

namespace crn {

bool Complex::is_zero() const {
  for (const Rat& v : y)
    if (v != 0) return false;
  return true;
}

bool Complex::is_integer() const {
  for (const Rat& v : y)
    if (!crn::is_integer(v)) return false;
  return true;
}

void Network::validate(bool require_species_used) const {
  std::set<std::string> names;
  for (const auto& s : species) {
    if (s.empty()) throw std::invalid_argument("empty species name");
    if (!names.insert(s).second)
      throw std::invalid_argument("duplicate species name: " + s);
  }

  for (int i = 0; i < complex_count(); ++i) {
    const Complex& c = complexes[i];
    if (int(c.y.size()) != species_count())
      throw std::invalid_argument("complex " + std::to_string(i) +
                                  " sized for a different species list");
    for (const Rat& v : c.y)
      if (v < 0)
        throw std::invalid_argument("negative stoichiometry in complex " +
                                    complex_name(i));
    for (int j = 0; j < i; ++j)
      if (complexes[j] == c)
        throw std::invalid_argument("duplicate complex: " + complex_name(i));
  }

  std::set<std::pair<int, int>> seen;
  std::vector<bool> used(complexes.size(), false);
  for (const Reaction& r : reactions) {
    if (r.source < 0 || r.source >= complex_count() || r.target < 0 ||
        r.target >= complex_count())
      throw std::invalid_argument("reaction endpoint out of range");
    if (!seen.insert({r.source, r.target}).second)
      throw std::invalid_argument("duplicate reaction " +
                                  complex_name(r.source) + " -> " +
                                  complex_name(r.target));
    used[r.source] = used[r.target] = true;
  }
  for (int i = 0; i < complex_count(); ++i)
    if (!used[i])
      throw std::invalid_argument("complex in no reaction: " + complex_name(i));

  if (require_species_used) {
    for (int k = 0; k < species_count(); ++k) {
      bool found = false;
      for (const Complex& c : complexes)
        if (c.y[k] != 0) {
          found = true;
          break;
        }
      if (!found)
        throw std::invalid_argument("species in no complex: " + species[k]);
    }
  }
}

std::string Network::complex_name(int ci) const {
  const Complex& c = complexes[ci];
  std::string out;
  for (int k = 0; k < species_count(); ++k) {
    if (c.y[k] == 0) continue;
    if (!out.empty()) out += " + ";
    if (c.y[k] != 1) out += rational_string(c.y[k]) + " ";
    out += species[k];
  }
  return out.empty() ? "0" : out;
}

int Network::find_complex(const Complex& c) const {
  for (int i = 0; i < complex_count(); ++i)
    if (complexes[i] == c) return i;
  return -1;
}

bool Network::has_integer_stoichiometry() const {
  for (const Complex& c : complexes)
    if (!c.is_integer()) return false;
  return true;
}

void MassActionSystem::validate(bool require_species_used) const {
  net.validate(require_species_used);
  if (rates.size() != net.reactions.size())
    throw std::invalid_argument("rate count != reaction count");
  for (size_t r = 0; r < rates.size(); ++r)
    if (rates[r] <= 0)
      throw std::invalid_argument(
          "nonpositive rate on " + net.complex_name(net.reactions[r].source) +
          " -> " + net.complex_name(net.reactions[r].target));
}

SystemMatrices build_matrices(const MassActionSystem& sys) {
  const Network& net = sys.net;
  int m = net.species_count(), n = net.complex_count();
  SystemMatrices out{Mat(m, n), Mat(n, n), Mat()};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < m; ++k) out.Y(k, i) = net.complexes[i].y[k];
  for (size_t r = 0; r < net.reactions.size(); ++r) {
    int s = net.reactions[r].source, t = net.reactions[r].target;
    if (s == t) continue;  // cancels out of the diagonal
    out.A(t, s) += sys.rates[r];
    out.A(s, s) -= sys.rates[r];
  }
  out.M = out.Y * out.A;
  return out;
}

namespace {

Rat positive_power(const Rat& base, const Rat& e) {
  if (!is_integer(e))
    throw std::domain_error("mass-action evaluation needs integer stoichiometry");
  return pow_rat(base, e.get_num().get_si());
}

}  // namespace

std::vector<Rat> monomial_vector(const Network& net, const std::vector<Rat>& x) {
  if (int(x.size()) != net.species_count())
    throw std::invalid_argument("monomial_vector: point has wrong dimension");
  for (const Rat& v : x)
    if (v <= 0) throw std::domain_error("monomial_vector: point not positive");
  std::vector<Rat> psi(net.complex_count(), Rat(1));
  for (int i = 0; i < net.complex_count(); ++i)
    for (int k = 0; k < net.species_count(); ++k) {
      const Rat& e = net.complexes[i].y[k];
      if (e != 0) psi[i] *= positive_power(x[k], e);
    }
  return psi;
}

std::vector<Rat> mass_action_rhs(const MassActionSystem& sys,
                                 const std::vector<Rat>& x) {
  const Network& net = sys.net;
  if (int(x.size()) != net.species_count())
    throw std::invalid_argument("mass_action_rhs: point has wrong dimension");
  for (const Rat& v : x)
    if (v <= 0) throw std::domain_error("mass_action_rhs: point not positive");
  std::vector<Rat> f(net.species_count());
  for (size_t r = 0; r < net.reactions.size(); ++r) {
    int s = net.reactions[r].source, t = net.reactions[r].target;
    if (s == t) continue;
    Rat mono = 1;
    for (int k = 0; k < net.species_count(); ++k) {
      const Rat& e = net.complexes[s].y[k];
      if (e != 0) mono *= positive_power(x[k], e);
    }
    mono *= sys.rates[r];
    for (int k = 0; k < net.species_count(); ++k) {
      Rat d = net.complexes[t].y[k] - net.complexes[s].y[k];
      if (d != 0) f[k] += d * mono;
    }
  }
  return f;
}

std::vector<Rat> mass_action_rhs_matrix(const MassActionSystem& sys,
                                        const std::vector<Rat>& x) {
  SystemMatrices mats = build_matrices(sys);
  return mats.M.apply(monomial_vector(sys.net, x));
}

}  // namespace crn
