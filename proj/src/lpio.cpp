#include "crn/lpio.hpp"

#include <cstddef>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "crn/parse.hpp"

namespace crn {

namespace {

// Exact decimal expansion when the denominator divides a power of ten
// (within reason), otherwise 17 significant digits.
std::string lp_number(const Rat& r) {
  Int d = r.get_den();
  int twos = 0, fives = 0;
  while (d % 2 == 0) d /= 2, ++twos;
  while (d % 5 == 0) d /= 5, ++fives;
  int digits = twos > fives ? twos : fives;
  if (d != 1 || digits > 40) return decimal_string(r, 17);
  if (digits == 0) return r.get_num().get_str();

  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Int num = r.get_num() * (scale / r.get_den());
  bool neg = num < 0;
  if (neg) num = -num;
  std::string s = num.get_str();
  if (int(s.size()) <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
  s.insert(s.size() - digits, ".");
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return neg ? "-" + s : s;
}

// Accumulates space-separated tokens, wrapping well before any reader's
// line-length limit.
class LineWriter {
 public:
  LineWriter(std::ostream& os, std::string first) : os_(os), cur_(std::move(first)) {}
  void add(const std::string& tok) {
    if (cur_.size() + tok.size() + 1 > 200) {
      os_ << cur_ << "\n";
      cur_ = "  ";
    }
    cur_ += " " + tok;
  }
  void flush() { os_ << cur_ << "\n"; }

 private:
  std::ostream& os_;
  std::string cur_;
};

void emit_terms(LineWriter& lw, const std::map<int, Rat>& terms,
                const std::vector<std::string>& names, int fallback_col) {
  bool first = true;
  for (const auto& [col, a] : terms) {
    if (a == 0) continue;
    std::string tok = a < 0 ? "- " : first ? "" : "+ ";
    Rat mag = abs(a);
    if (mag != 1) tok += lp_number(mag) + " ";
    tok += names[col];
    lw.add(tok);
    first = false;
  }
  if (first) lw.add("0 " + names[fallback_col]);
}

}  // namespace

void write_lp(std::ostream& os, const MilpProblem& p,
              const std::vector<std::string>& var_names,
              const std::vector<std::string>& row_names,
              const std::vector<std::string>& comments) {
  const int n = p.lp.ncols;
  if (n < 1) throw std::invalid_argument("lp export: program has no columns");
  if (int(var_names.size()) != n)
    throw std::invalid_argument("lp export: variable name count mismatch");
  if (row_names.size() != p.lp.rows.size())
    throw std::invalid_argument("lp export: row name count mismatch");
  if (!p.integral.empty() && int(p.integral.size()) != n)
    throw std::invalid_argument("lp export: integral mask mismatch");

  auto is_int = [&](int j) { return !p.integral.empty() && p.integral[j]; };
  auto is_binary = [&](int j) {
    return is_int(j) && p.lp.lb[j] && *p.lp.lb[j] == 0 && p.lp.ub[j] && *p.lp.ub[j] == 1;
  };

  for (const auto& c : comments) os << "\\ " << c << "\n";

  os << "Minimize\n";
  {
    std::map<int, Rat> obj;
    for (int j = 0; j < n; ++j)
      if (p.lp.obj[j] != 0) obj[j] = p.lp.obj[j];
    LineWriter lw(os, " obj:");
    emit_terms(lw, obj, var_names, 0);
    lw.flush();
  }

  os << "Subject To\n";
  for (std::size_t i = 0; i < p.lp.rows.size(); ++i) {
    const LpRow& r = p.lp.rows[i];
    std::map<int, Rat> terms;
    for (const auto& [col, a] : r.terms) terms[col] += a;
    LineWriter lw(os, " " + row_names[i] + ":");
    emit_terms(lw, terms, var_names, 0);
    lw.add(r.sense == RowSense::LE ? "<=" : r.sense == RowSense::GE ? ">=" : "=");
    lw.add(lp_number(r.rhs));
    lw.flush();
  }

  std::string bounds;
  for (int j = 0; j < n; ++j) {
    if (is_binary(j)) continue;
    const auto& lo = p.lp.lb[j];
    const auto& hi = p.lp.ub[j];
    if (lo && *lo == 0 && !hi) continue;  // the format's default
    bounds += " ";
    if (!lo && !hi)
      bounds += var_names[j] + " free";
    else if (lo && hi && *lo == *hi)
      bounds += var_names[j] + " = " + lp_number(*lo);
    else if (lo && *lo == 0 && hi)
      bounds += var_names[j] + " <= " + lp_number(*hi);
    else if (lo && hi)
      bounds += lp_number(*lo) + " <= " + var_names[j] + " <= " + lp_number(*hi);
    else if (lo)
      bounds += var_names[j] + " >= " + lp_number(*lo);
    else
      bounds += "-infinity <= " + var_names[j] + " <= " + lp_number(*hi);
    bounds += "\n";
  }
  if (!bounds.empty()) os << "Bounds\n" << bounds;

  std::vector<int> bins, gens;
  for (int j = 0; j < n; ++j) {
    if (is_binary(j))
      bins.push_back(j);
    else if (is_int(j))
      gens.push_back(j);
  }
  for (const auto& [header, cols] :
       {std::pair<const char*, const std::vector<int>&>{"Binaries", bins},
        {"Generals", gens}}) {
    if (cols.empty()) continue;
    os << header << "\n";
    LineWriter lw(os, "");
    for (int j : cols) lw.add(var_names[j]);
    lw.flush();
  }
  os << "End\n";
}

void write_model_lp(std::ostream& os, const MilpModel& md) {
  std::vector<std::string> comments = {
      "realization search model",
      "seed " + std::to_string(md.config.seed),
      "eps " + rational_string(md.config.eps),
      std::string("mode ") + (md.config.mode == ConjugacyMode::DynamicEquivalence
                                  ? "dynequiv"
                                  : "conjugate"),
      std::string("theorem ") +
          (md.config.theorem == TheoremKind::DeficiencyOne ? "dot" : "boros"),
  };
  write_lp(os, md.prob, md.var_names, md.row_names, comments);
}

std::vector<Rat> read_solution(std::istream& is,
                               const std::vector<std::string>& var_names) {
  std::unordered_map<std::string, int> index;
  for (std::size_t j = 0; j < var_names.size(); ++j)
    index.emplace(var_names[j], int(j));

  std::vector<Rat> x(var_names.size(), Rat(0));
  std::vector<bool> seen(var_names.size(), false);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto cut = line.find_first_of("#\\");
    if (cut != std::string::npos) line.erase(cut);
    std::istringstream ss(line);
    std::string name, value, extra;
    if (!(ss >> name)) continue;
    if (!(ss >> value)) throw ParseError(lineno, "expected `name value`");
    if (ss >> extra) throw ParseError(lineno, "trailing text '" + extra + "'");
    auto it = index.find(name);
    if (it == index.end()) throw ParseError(lineno, "unknown variable '" + name + "'");
    if (seen[it->second]) throw ParseError(lineno, "variable '" + name + "' listed twice");
    auto r = try_parse_rational(value);
    if (!r) throw ParseError(lineno, "bad number '" + value + "'");
    x[it->second] = *r;
    seen[it->second] = true;
  }
  return x;
}

RepairedSolution repair_solution(const MilpProblem& p,
                                 const std::vector<Rat>& approx,
                                 const std::vector<std::string>& row_names) {
  const int n = p.lp.ncols;
  if (int(approx.size()) != n)
    throw std::invalid_argument("repair: solution length mismatch");
  if (!p.integral.empty() && int(p.integral.size()) != n)
    throw std::invalid_argument("repair: integral mask mismatch");

  const Rat snap_tol(1, 1000000);
  const Rat row_tol(1, 1000000000);

  std::vector<Rat> x = approx;
  for (int j = 0; j < n; ++j) {
    if (p.integral.empty() || !p.integral[j]) continue;
    Rat r(floor_int(x[j] + Rat(1, 2)));
    if (abs(x[j] - r) > snap_tol)
      throw std::runtime_error("repair: column " + std::to_string(j + 1) + " = " +
                               decimal_string(x[j]) + " is not near an integer");
    if ((p.lp.lb[j] && r < *p.lp.lb[j]) || (p.lp.ub[j] && r > *p.lp.ub[j]))
      throw std::runtime_error("repair: column " + std::to_string(j + 1) +
                               " leaves its bounds");
    x[j] = r;
  }

  for (std::size_t i = 0; i < p.lp.rows.size(); ++i) {
    const LpRow& r = p.lp.rows[i];
    Rat lhs(0);
    for (const auto& [col, a] : r.terms) lhs += a * x[col];
    bool bad = r.sense == RowSense::EQ   ? abs(lhs - r.rhs) > row_tol
               : r.sense == RowSense::LE ? lhs > r.rhs + row_tol
                                         : lhs < r.rhs - row_tol;
    if (bad) {
      std::string which = i < row_names.size() ? row_names[i]
                                               : "row " + std::to_string(i + 1);
      throw std::runtime_error("repair: solution violates " + which +
                               " beyond the 1e-9 tolerance");
    }
  }

  LpProblem fixed = p.lp;
  for (int j = 0; j < n; ++j)
    if (!p.integral.empty() && p.integral[j]) {
      fixed.lb[j] = x[j];
      fixed.ub[j] = x[j];
    }
  LpResult res = solve_lp(fixed);
  if (res.status != LpStatus::Optimal)
    throw std::runtime_error("repair: the integer assignment admits no exact completion");
  return {res.x, res.objective};
}

}  // namespace crn
