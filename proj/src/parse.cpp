#include "crn/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace crn {
namespace {

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// One additive term of a complex: coefficient and species name.
using RawComplex = std::vector<std::pair<Rat, std::string>>;

RawComplex parse_complex(const std::string& text, int line) {
  std::string t = trim(text);
  if (t.empty()) throw ParseError(line, "empty complex");
  if (t == "0") return {};
  RawComplex out;
  for (const std::string& part : split_on(t, '+')) {
    auto toks = split_ws(part);
    Rat coeff = 1;
    std::string name;
    if (toks.size() == 1) {
      name = toks[0];
    } else if (toks.size() == 2) {
      auto c = try_parse_rational(toks[0]);
      if (!c) throw ParseError(line, "bad coefficient '" + toks[0] + "'");
      coeff = *c;
      name = toks[1];
    } else {
      throw ParseError(line, "bad complex term '" + trim(part) + "'");
    }
    if (!is_ident(name))
      throw ParseError(line, "bad species name '" + name + "'");
    if (coeff <= 0)
      throw ParseError(line, "nonpositive coefficient on " + name);
    out.push_back({coeff, name});
  }
  return out;
}

struct SpeciesPool {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  bool frozen = false;  // set by @species: unknown names become errors

  int lookup(const std::string& name, int line) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    if (frozen)
      throw ParseError(line, "species '" + name + "' not in @species list");
    index[name] = int(names.size());
    names.push_back(name);
    return int(names.size()) - 1;
  }
};

}  // namespace

MassActionSystem parse_network(const std::string& text) {
  SpeciesPool pool;
  struct RawReaction {
    RawComplex lhs, rhs;
    Rat rate;
    int line;
  };
  std::vector<RawReaction> raw;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool saw_reaction = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.rfind("@species", 0) == 0) {
      if (saw_reaction)
        throw ParseError(lineno, "@species must precede the reactions");
      if (pool.frozen) throw ParseError(lineno, "duplicate @species line");
      for (const std::string& name : split_ws(line.substr(8))) {
        if (!is_ident(name))
          throw ParseError(lineno, "bad species name '" + name + "'");
        if (pool.index.count(name))
          throw ParseError(lineno, "duplicate species '" + name + "'");
        pool.index[name] = int(pool.names.size());
        pool.names.push_back(name);
      }
      if (pool.names.empty()) throw ParseError(lineno, "empty @species list");
      pool.frozen = true;
      continue;
    }

    std::string body = line, ratepart;
    auto semi = line.find(';');
    if (semi != std::string::npos) {
      body = trim(line.substr(0, semi));
      ratepart = trim(line.substr(semi + 1));
    }

    bool reversible = false;
    auto arrow = body.find("<->");
    size_t arrow_len = 3;
    if (arrow != std::string::npos) {
      reversible = true;
    } else {
      arrow = body.find("->");
      arrow_len = 2;
    }
    if (arrow == std::string::npos)
      throw ParseError(lineno, "expected '->' or '<->'");

    RawComplex lhs = parse_complex(body.substr(0, arrow), lineno);
    RawComplex rhs = parse_complex(body.substr(arrow + arrow_len), lineno);

    std::vector<Rat> rates;
    if (ratepart.empty()) {
      rates.assign(reversible ? 2 : 1, Rat(1));
    } else {
      if (ratepart.rfind("k", 0) != 0)
        throw ParseError(lineno, "expected 'k=<rate>' after ';'");
      auto eq = ratepart.find('=');
      if (eq == std::string::npos)
        throw ParseError(lineno, "expected 'k=<rate>' after ';'");
      for (const std::string& piece : split_on(ratepart.substr(eq + 1), ',')) {
        auto r = try_parse_rational(piece);
        if (!r) throw ParseError(lineno, "bad rate '" + trim(piece) + "'");
        if (*r <= 0) throw ParseError(lineno, "rate must be positive");
        rates.push_back(*r);
      }
      if (int(rates.size()) != (reversible ? 2 : 1))
        throw ParseError(lineno, reversible ? "reversible line needs k=<r1>,<r2>"
                                            : "expected a single rate");
    }

    saw_reaction = true;
    raw.push_back({lhs, rhs, rates[0], lineno});
    if (reversible) raw.push_back({rhs, lhs, rates[1], lineno});
  }

  if (raw.empty()) throw ParseError(lineno, "no reactions found");

  // Resolve names in reaction order so first appearance fixes indices.
  for (auto& rr : raw) {
    for (auto& [c, name] : rr.lhs) pool.lookup(name, rr.line);
    for (auto& [c, name] : rr.rhs) pool.lookup(name, rr.line);
  }

  MassActionSystem sys;
  sys.net.species = pool.names;
  int m = int(pool.names.size());
  auto materialize = [&](const RawComplex& rc, int line) {
    Complex c;
    c.y.assign(m, Rat(0));
    for (const auto& [coeff, name] : rc) {
      Rat& slot = c.y[pool.index.at(name)];
      if (slot != 0)
        throw ParseError(line, "species '" + name + "' repeated in a complex");
      slot = coeff;
    }
    int idx = sys.net.find_complex(c);
    if (idx < 0) {
      sys.net.complexes.push_back(std::move(c));
      idx = sys.net.complex_count() - 1;
    }
    return idx;
  };

  for (const auto& rr : raw) {
    int s = materialize(rr.lhs, rr.line);
    int t = materialize(rr.rhs, rr.line);
    for (const Reaction& prev : sys.net.reactions)
      if (prev.source == s && prev.target == t)
        throw ParseError(rr.line, "duplicate reaction " +
                                      sys.net.complex_name(s) + " -> " +
                                      sys.net.complex_name(t));
    sys.net.reactions.push_back({s, t});
    sys.rates.push_back(rr.rate);
  }

  try {
    sys.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
  return sys;
}

std::string write_network(const MassActionSystem& sys) {
  std::string out = "@species";
  for (const auto& s : sys.net.species) out += " " + s;
  out += "\n";
  for (size_t r = 0; r < sys.net.reactions.size(); ++r) {
    out += sys.net.complex_name(sys.net.reactions[r].source) + " -> " +
           sys.net.complex_name(sys.net.reactions[r].target) +
           " ; k=" + rational_string(sys.rates[r]) + "\n";
  }
  return out;
}

PolynomialSystem parse_ode(const std::string& text) {
  SpeciesPool pool;
  struct RawEq {
    int var;
    std::string rhs;
    int line;
  };
  std::vector<RawEq> eqs;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected '='");
    std::string lhs = trim(line.substr(0, eq));
    // d<name>/dt, whitespace tolerated between the pieces
    lhs.erase(std::remove_if(lhs.begin(), lhs.end(),
                             [](char c) { return c == ' ' || c == '\t'; }),
              lhs.end());
    if (lhs.size() < 5 || lhs[0] != 'd' || lhs.substr(lhs.size() - 3) != "/dt")
      throw ParseError(lineno, "left side must be d<name>/dt");
    std::string name = lhs.substr(1, lhs.size() - 4);
    if (!is_ident(name))
      throw ParseError(lineno, "bad species name '" + name + "'");
    int var = pool.lookup(name, lineno);
    for (const auto& prev : eqs)
      if (prev.var == var)
        throw ParseError(lineno, "duplicate equation for " + name);
    eqs.push_back({var, trim(line.substr(eq + 1)), lineno});
  }
  if (eqs.empty()) throw ParseError(lineno, "no equations found");

  // Split each right side into signed monomials, then factors.
  struct RawTerm {
    int var;
    Rat coeff;
    std::vector<std::pair<int, long>> powers;  // species index, exponent
  };
  std::vector<RawTerm> terms;
  for (const auto& e : eqs) {
    const std::string& s = e.rhs;
    if (s.empty()) continue;  // dX/dt = 0 spelled as emptiness is rejected below
    size_t pos = 0;
    while (pos < s.size()) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos >= s.size()) break;
      int sign = 1;
      if (s[pos] == '+' || s[pos] == '-') {
        sign = s[pos] == '-' ? -1 : 1;
        ++pos;
      }
      size_t end = pos;
      while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
      std::string chunk = trim(s.substr(pos, end - pos));
      pos = end;
      if (chunk.empty()) throw ParseError(e.line, "empty term");

      RawTerm t{e.var, Rat(sign), {}};
      for (const std::string& fraw : split_on(chunk, '*')) {
        std::string f = trim(fraw);
        if (f.empty()) throw ParseError(e.line, "empty factor");
        if (auto c = try_parse_rational(f)) {
          t.coeff *= *c;
          continue;
        }
        std::string base = f;
        long expo = 1;
        auto caret = f.find('^');
        if (caret != std::string::npos) {
          base = trim(f.substr(0, caret));
          std::string es = trim(f.substr(caret + 1));
          if (es.empty() ||
              !std::all_of(es.begin(), es.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
              }))
            throw ParseError(e.line, "bad exponent in '" + f + "'");
          expo = std::stol(es);
        }
        if (!is_ident(base))
          throw ParseError(e.line, "bad factor '" + f + "'");
        t.powers.push_back({pool.lookup(base, e.line), expo});
      }
      terms.push_back(std::move(t));
    }
  }

  PolynomialSystem p;
  p.vars = pool.names;
  p.rhs.resize(pool.names.size());
  for (const RawTerm& t : terms) {
    PolyTerm pt{t.coeff, std::vector<long>(pool.names.size(), 0)};
    for (auto [idx, e] : t.powers) pt.exp[idx] += e;
    p.rhs[t.var].push_back(std::move(pt));
  }
  p.normalize();
  return p;
}

MassActionSystem with_species_order(const MassActionSystem& sys,
                                    const std::vector<std::string>& names) {
  const auto& old = sys.net.species;
  if (names.size() != old.size())
    throw std::invalid_argument("species lists differ in size");
  std::vector<int> perm(names.size());
  for (size_t k = 0; k < names.size(); ++k) {
    auto it = std::find(old.begin(), old.end(), names[k]);
    if (it == old.end())
      throw std::invalid_argument("species '" + names[k] + "' not present");
    perm[k] = int(it - old.begin());
  }
  MassActionSystem out = sys;
  out.net.species = names;
  for (size_t i = 0; i < out.net.complexes.size(); ++i)
    for (size_t k = 0; k < names.size(); ++k)
      out.net.complexes[i].y[k] = sys.net.complexes[i].y[perm[k]];
  return out;
}

}  // namespace crn
