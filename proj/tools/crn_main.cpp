// crn: reaction-network analysis and realization search at the command line.
//
//   analyze    structural report of a network file
//   realize    canonical network for a polynomial ODE system
//   find       search for a dynamically equivalent or linearly conjugate
//              realization meeting the requested structural conditions
//   verify     independently check a claimed realization
//   export-lp  write the search program as an LP file / import a solution
//
// Human-readable output goes to stdout; --json swaps it for the JSON
// document, --out writes the JSON to a file alongside the human text.
// Exit codes for find and the import path: 0 certified result, 2 proven
// infeasible, 3 budget exhausted without a certified result, 1 errors.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "crn/graph.hpp"
#include "crn/lpio.hpp"
#include "crn/model.hpp"
#include "crn/parse.hpp"
#include "crn/polynomial.hpp"
#include "crn/realization.hpp"
#include "crn/report.hpp"
#include "crn/search.hpp"

using namespace crn;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

bool looks_like_ode(const std::string& text) {
  return text.find("/dt") != std::string::npos;
}

// A network file, or an ODE file (spotted by the d·/dt head) realized
// into its canonical network first.
MassActionSystem load_system(const std::string& path, bool* realized) {
  std::string text = slurp(path);
  if (looks_like_ode(text)) {
    if (realized) *realized = true;
    return canonical_realization(parse_ode(text));
  }
  if (realized) *realized = false;
  return parse_network(text);
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

std::string rat_text(const Rat& r) {
  std::string s = rational_string(r);
  if (!is_integer(r)) s += " (" + decimal_string(r) + ")";
  return s;
}

std::string set_text(const Network& net, const std::vector<int>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ", ";
    s += net.complex_name(idx[i]);
  }
  return s + "}";
}

// stdout carries the human summary unless --json swapped in the document;
// --out writes the document to a file either way.
struct Output {
  bool json = false;
  std::string out;

  void deliver(const std::string& human, const Json& doc) const {
    if (!out.empty()) write_file(out, doc.dump(2) + "\n");
    if (json)
      std::cout << doc.dump(2) << "\n";
    else
      std::cout << human;
  }
};

std::string analyze_human(const MassActionSystem& sys) {
  const Network& net = sys.net;
  LinkageDecomposition dec = decompose(net);
  DeficiencyReport rep = deficiency_report(net);
  std::ostringstream os;
  os << "network: " << net.species_count() << " species, "
     << net.complex_count() << " complexes, " << net.reactions.size()
     << " reactions\n";
  os << "complexes:";
  for (int i = 0; i < net.complex_count(); ++i)
    os << (i ? ",  [" : "  [") << i << "] " << net.complex_name(i);
  os << "\n";
  os << "linkage classes (" << rep.linkage_count << "):";
  for (const auto& cl : dec.linkage_classes) os << " " << set_text(net, cl);
  os << "\nstrong classes (" << dec.strong_classes.size() << "):";
  for (const auto& cl : dec.strong_classes) os << " " << set_text(net, cl);
  os << "\nterminal strong classes (" << rep.terminal_count << "):";
  for (std::size_t k = 0; k < dec.strong_classes.size(); ++k)
    if (dec.terminal[k]) os << " " << set_text(net, dec.strong_classes[k]);
  os << "\nweakly reversible: " << yesno(rep.weakly_reversible) << "\n";
  os << "dimensions: stoichiometric " << stoichiometric_dim(net) << ", kinetic "
     << kinetic_dim(sys) << "\n";
  os << "deficiency: " << rep.deficiency << " (n=" << rep.n
     << ", l=" << rep.linkage_count << ", s=" << rep.s << "); per class:";
  int sum = 0;
  for (const auto& cs : rep.classes) {
    os << " " << cs.deficiency;
    sum += cs.deficiency;
  }
  os << " (sum " << sum << ")\n";
  os << "deficiency-one conditions: "
     << (rep.dot_satisfied ? "satisfied" : "not satisfied") << "\n";
  os << "  class deficiencies at most one: "
     << yesno(rep.dot_deficiencies_bounded) << "\n";
  os << "  class deficiencies sum to the network deficiency: "
     << yesno(rep.dot_sum_matches) << "\n";
  os << "  one terminal strong class per linkage class: "
     << yesno(rep.dot_terminal_matches) << "\n";
  os << "sum condition alone: "
     << (rep.boros_satisfied ? "satisfied" : "not satisfied") << "\n";
  return os.str();
}

std::string certificate_human(const Certificate& cert) {
  std::ostringstream os;
  os << "conjugacy: " << (cert.conjugacy.ok() ? "certified" : "REJECTED")
     << " (residual " << rat_text(cert.conjugacy.residual) << ")\n";
  if (!cert.conjugacy.failure.empty())
    os << "  " << cert.conjugacy.failure << "\n";
  os << "relation: "
     << (cert.dynamically_equivalent ? "dynamical equivalence (c = 1)"
                                     : "linear conjugacy")
     << "\n";
  os << "core structure: n=" << cert.core.n
     << ", l=" << cert.core.linkage_count << ", s=" << cert.core.s
     << ", deficiency " << cert.core.deficiency
     << ", weakly reversible: " << yesno(cert.weakly_reversible) << "\n";
  os << "spectators immaterial (full vs core): "
     << yesno(cert.lemma_consistent) << "\n";
  os << "conditions (" << to_string(cert.theorem)
     << "): " << (cert.theorem_ok ? "satisfied" : "not satisfied") << "\n";
  os << "certified: " << yesno(cert.certified) << "\n";
  os << "conclusion: " << cert.conclusion << "\n";
  return os.str();
}

std::string realization_human(const Realization& real) {
  const Network& net = real.sys.net;
  std::ostringstream os;
  os << "c:";
  for (std::size_t k = 0; k < real.c.size(); ++k)
    os << (k ? ", " : " ") << net.species[k] << " = " << rat_text(real.c[k]);
  os << "\nrealization:\n";
  for (std::size_t r = 0; r < net.reactions.size(); ++r) {
    const Reaction& rx = net.reactions[r];
    if (rx.source == rx.target) continue;
    os << "  " << net.complex_name(rx.source) << " -> "
       << net.complex_name(rx.target)
       << " ; k=" << rat_text(real.sys.rates[r]) << "\n";
  }
  if (!real.isolated.empty()) {
    os << "isolated complexes:";
    for (std::size_t i = 0; i < real.isolated.size(); ++i)
      os << (i ? ", " : " ") << net.complex_name(real.isolated[i]);
    os << "\n";
  }
  return os.str();
}

int exit_code(SearchStatus status) {
  switch (status) {
    case SearchStatus::Certified: return 0;
    case SearchStatus::Infeasible: return 2;
    case SearchStatus::Limit: return 3;
    default: return 1;
  }
}

// Options shared by find and export-lp.
struct ModelArgs {
  std::string eps = "1/10";
  std::uint64_t seed = 0;
  std::string mode = "conjugate";
  std::string theorem = "dot";
  int threads = 1;
  int points = 100;

  ModelConfig config() const {
    ModelConfig cfg;
    cfg.eps = parse_rational(eps);
    cfg.seed = seed;
    cfg.mode = mode == "dynequiv" ? ConjugacyMode::DynamicEquivalence
                                  : ConjugacyMode::LinearConjugacy;
    cfg.theorem =
        theorem == "boros" ? TheoremKind::SumOnly : TheoremKind::DeficiencyOne;
    return cfg;
  }

  Json echo(const std::string& solver) const {
    ModelConfig cfg = config();
    return Json{{"eps", rational_json(cfg.eps)},
                {"seed", seed},
                {"mode", to_string(cfg.mode)},
                {"theorem", to_string(cfg.theorem)},
                {"solver", solver},
                {"threads", threads},
                {"sample_points", points}};
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--eps", eps, "span-test parameter in (0,1)")
        ->capture_default_str();
    cmd->add_option("--seed", seed,
                    "seed for the span-test coefficients (CRN_SEED sets the "
                    "default)");
    cmd->add_option("--mode", mode, "dynequiv: all c fixed to 1")
        ->check(CLI::IsMember({"dynequiv", "conjugate"}))
        ->capture_default_str();
    cmd->add_option("--theorem", theorem,
                    "dot: full deficiency-one checklist; boros: sum "
                    "condition only")
        ->check(CLI::IsMember({"dot", "boros"}))
        ->capture_default_str();
    cmd->add_option("--threads", threads,
                    "solver and checker workers (1 = deterministic reference)")
        ->capture_default_str();
    cmd->add_option("--points", points,
                    "sample points for the vector-field check")
        ->capture_default_str();
  }
};

// Imported-solution branch shared by find --solver lpfile and
// export-lp --import: repair to exact rationals, decode, certify.
int import_and_certify(const MassActionSystem& sys, const MilpModel& md,
                       const std::string& input, const std::string& sol_path,
                       const ModelArgs& margs, const Output& output) {
  std::ifstream is(sol_path);
  if (!is) throw std::runtime_error("cannot open " + sol_path);
  std::vector<Rat> approx = read_solution(is, md.var_names);
  RepairedSolution fixed = repair_solution(md.prob, approx, md.row_names);

  ModelConfig cfg = md.config;
  Realization real = decode_solution(md, sys, fixed.x);
  Certificate cert = certify(sys, real, cfg.theorem, margs.points,
                             cfg.seed ^ 0x5eed, margs.threads);

  int nbin = 0;
  for (bool b : md.prob.integral) nbin += b;
  Json doc{{"command", "find"},
           {"input", input},
           {"status", cert.certified ? "certified" : "certify-failed"},
           {"config", margs.echo("lpfile")},
           {"solver", Json{{"status", "imported"},
                           {"solution_file", sol_path},
                           {"objective", rational_json(fixed.objective)},
                           {"variables", md.var_count()},
                           {"binaries", nbin},
                           {"rows", md.row_count()},
                           {"class_slots", md.nclasses}}},
           {"target", analysis_json(sys)},
           {"realization", realization_json(real)},
           {"verification", certificate_json(cert, real.sys.net, margs.points)}};

  std::ostringstream human;
  human << "status: " << (cert.certified ? "certified" : "certify-failed")
        << "\nsolver: imported " << sol_path << ", objective "
        << rat_text(fixed.objective) << "\n"
        << realization_human(real) << certificate_human(cert);
  output.deliver(human.str(), doc);
  return cert.certified ? 0 : 1;
}

int cmd_analyze(const std::string& input, const Output& output) {
  MassActionSystem sys = parse_network(slurp(input));
  Json doc{{"command", "analyze"},
           {"input", input},
           {"analysis", analysis_json(sys)}};
  return output.deliver(analyze_human(sys), doc), 0;
}

int cmd_realize(const std::string& input, const std::string& out_path,
                bool json) {
  PolynomialSystem p = parse_ode(slurp(input));
  MassActionSystem sys = canonical_realization(p);

  // Round trip: the realized network must reproduce the input system
  // coefficient for coefficient.
  PolynomialSystem want = p;
  want.normalize();
  if (!(polynomial_of(sys) == want))
    throw std::runtime_error("realize round-trip check failed");

  std::string text = write_network(sys);
  if (!out_path.empty()) write_file(out_path, text);
  if (json) {
    Json doc{{"command", "realize"},
             {"input", input},
             {"network_file", text},
             {"analysis", analysis_json(sys)}};
    std::cout << doc.dump(2) << "\n";
  } else if (out_path.empty()) {
    std::cout << text;
  } else {
    std::cout << "wrote " << out_path << " (" << sys.net.complex_count()
              << " complexes, " << sys.net.reactions.size() << " reactions)\n";
  }
  return 0;
}

struct FindArgs {
  std::string input;
  ModelArgs margs;
  std::string solver = "internal";
  std::string lp_path, sol_path;
  std::int64_t max_nodes = -1;
  double max_seconds = -1;
  int attempts = 3;
  Output output;
};

int run_lpfile(const FindArgs& a, const MassActionSystem& sys,
               const ModelConfig& cfg) {
  MilpModel md = build_search_model(sys, cfg);
  std::string lp_path = a.lp_path.empty() ? a.input + ".lp" : a.lp_path;
  std::string sol_path = a.sol_path.empty() ? a.input + ".sol" : a.sol_path;

  if (a.sol_path.empty() && !std::ifstream(sol_path).good()) {
    std::ofstream os(lp_path);
    if (!os) throw std::runtime_error("cannot write " + lp_path);
    write_model_lp(os, md);
    std::cout << "wrote " << lp_path << " (" << md.var_count()
              << " variables, " << md.row_count() << " rows)\n"
              << "solve it externally, write `name value` lines to "
              << sol_path << ", and re-run this command\n";
    return 3;  // nothing certified yet
  }
  return import_and_certify(sys, md, a.input, sol_path, a.margs, a.output);
}

int cmd_find(const FindArgs& a) {
  bool realized = false;
  MassActionSystem sys = load_system(a.input, &realized);
  ModelConfig cfg = a.margs.config();

  if (a.solver == "lpfile") return run_lpfile(a, sys, cfg);

  SearchOptions opt;
  opt.model = cfg;
  opt.limits.threads = a.margs.threads;
  opt.limits.max_nodes = a.max_nodes;
  opt.limits.max_seconds = a.max_seconds;
  opt.max_attempts = a.attempts;
  opt.check_points = a.margs.points;
  SearchOutcome out = search_realization(sys, opt);

  Json doc{{"command", "find"}, {"input", a.input}};
  Json body = search_json(out, sys, a.margs.echo(a.solver));
  for (const auto& [key, value] : body.items()) doc[key] = value;

  std::ostringstream human;
  if (realized)
    human << "input realized into " << sys.net.complex_count()
          << " complexes and " << sys.net.reactions.size() << " reactions\n";
  switch (out.status) {
    case SearchStatus::Certified:
      human << "status: certified\n";
      break;
    case SearchStatus::Infeasible:
      human << "status: infeasible -- no realization with the requested "
               "structure exists for these coefficients\n";
      break;
    case SearchStatus::Limit:
      human << "status: limit -- budget exhausted without a certified "
               "result\n";
      break;
    default:
      human << "status: certify-failed -- solver solutions kept failing "
               "the independent check\n";
  }
  const char* solver_status = out.solve.status == MilpStatus::Optimal
                                  ? "optimal"
                                  : out.solve.status == MilpStatus::Infeasible
                                        ? "infeasible"
                                        : "limit";
  human << "solver: " << solver_status;
  if (out.solve.has_solution)
    human << ", objective " << rat_text(out.solve.objective);
  human << ", nodes " << out.solve.nodes << ", LP iterations "
        << out.solve.lp_iterations << ", attempt " << out.attempts << " (seed "
        << out.seed_used << ")\n";
  if (out.found)
    human << realization_human(out.realization)
          << certificate_human(out.certificate);
  a.output.deliver(human.str(), doc);
  return exit_code(out.status);
}

int cmd_verify(const std::string& orig_path, const std::string& cand_path,
               const std::string& c_text, const ModelArgs& margs,
               const Output& output) {
  MassActionSystem original = parse_network(slurp(orig_path));
  MassActionSystem candidate = parse_network(slurp(cand_path));

  std::vector<Rat> c(original.net.species_count(), Rat(1));
  if (!c_text.empty()) {
    std::vector<Rat> given;
    std::istringstream ss(c_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) given.push_back(parse_rational(tok));
    if (given.size() != c.size())
      throw std::runtime_error("--c needs one value per species (" +
                               std::to_string(c.size()) + ")");
    c = std::move(given);
  }

  Realization real;
  real.sys = candidate;
  real.c = c;
  ModelConfig cfg = margs.config();
  Certificate cert = certify(original, real, cfg.theorem, margs.points,
                             margs.seed ^ 0x5eed, margs.threads);

  Json cs = Json::array();
  for (const Rat& v : c) cs.push_back(rational_json(v));
  Json doc{{"command", "verify"},
           {"original", orig_path},
           {"candidate", cand_path},
           {"c", std::move(cs)},
           {"verification",
            certificate_json(cert, candidate.net, margs.points)}};

  std::ostringstream human;
  human << "c:";
  for (std::size_t k = 0; k < c.size(); ++k)
    human << (k ? ", " : " ") << original.net.species[k] << " = "
          << rat_text(c[k]);
  human << "\n" << certificate_human(cert);
  output.deliver(human.str(), doc);
  return cert.conjugacy.ok() ? 0 : 1;
}

int cmd_export_lp(const std::string& input, const std::string& sol_path,
                  const std::string& lp_out, const ModelArgs& margs,
                  const Output& output) {
  bool realized = false;
  MassActionSystem sys = load_system(input, &realized);
  MilpModel md = build_search_model(sys, margs.config());

  if (!sol_path.empty())
    return import_and_certify(sys, md, input, sol_path, margs, output);

  if (lp_out.empty()) {
    write_model_lp(std::cout, md);
  } else {
    std::ofstream os(lp_out);
    if (!os) throw std::runtime_error("cannot write " + lp_out);
    write_model_lp(os, md);
    std::cout << "wrote " << lp_out << " (" << md.var_count()
              << " variables, " << md.row_count() << " rows)\n";
  }
  return 0;
}

std::uint64_t seed_from_env() {
  const char* env = std::getenv("CRN_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end)
    throw std::runtime_error("CRN_SEED is not an unsigned integer");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chemical reaction network realization toolkit"};
  app.require_subcommand(1);

  std::string input, candidate, c_text, out_path, lp_out;
  Output output;

  try {
    ModelArgs margs;
    margs.seed = seed_from_env();
    FindArgs fargs;
    fargs.margs = margs;

    CLI::App* analyze =
        app.add_subcommand("analyze", "structural report of a network file");
    analyze->add_option("file", input, "network file")->required();
    analyze->add_flag("--json", output.json, "JSON to stdout");
    analyze->add_option("--out", output.out, "write JSON here");

    CLI::App* realize = app.add_subcommand(
        "realize", "canonical network for a polynomial ODE system");
    realize->add_option("ode", input, "ODE file")->required();
    bool realize_json = false;
    realize->add_flag("--json", realize_json, "JSON to stdout");
    realize->add_option("--out", out_path, "write the network file here");

    CLI::App* find = app.add_subcommand(
        "find", "search for a realization meeting the requested conditions");
    find->add_option("file", fargs.input, "network or ODE file")->required();
    fargs.margs.attach(find);
    find->add_option("--solver", fargs.solver,
                     "internal: exact branch-and-bound; lpfile: write the "
                     "LP, import the solution file once it exists")
        ->check(CLI::IsMember({"internal", "lpfile"}))
        ->capture_default_str();
    find->add_option("--lp", fargs.lp_path,
                     "LP path for --solver lpfile (default: <file>.lp)");
    find->add_option("--import", fargs.sol_path,
                     "solution file to import (default: <file>.sol)");
    find->add_option("--max-nodes", fargs.max_nodes,
                     "branch-and-bound node budget (-1 = unlimited)");
    find->add_option("--time-limit", fargs.max_seconds,
                     "wall-clock budget in seconds (-1 = unlimited)");
    find->add_option("--attempts", fargs.attempts,
                     "re-sample budget for failed certifications")
        ->capture_default_str();
    find->add_flag("--json", fargs.output.json, "JSON to stdout");
    find->add_option("--out", fargs.output.out, "write JSON here");

    CLI::App* verify =
        app.add_subcommand("verify", "independently check a realization");
    verify->add_option("original", input, "original network file")->required();
    verify->add_option("candidate", candidate, "candidate network file")
        ->required();
    ModelArgs vargs = margs;
    verify->add_option("--c", c_text,
                       "comma-separated conjugacy constants (default: all 1)");
    verify->add_option("--theorem", vargs.theorem,
                       "structural conditions to evaluate")
        ->check(CLI::IsMember({"dot", "boros"}))
        ->capture_default_str();
    verify->add_option("--points", vargs.points,
                       "sample points for the vector-field check")
        ->capture_default_str();
    verify->add_option("--threads", vargs.threads, "checker workers")
        ->capture_default_str();
    verify->add_flag("--json", output.json, "JSON to stdout");
    verify->add_option("--out", output.out, "write JSON here");

    CLI::App* exportlp = app.add_subcommand(
        "export-lp", "write the search program as an LP file");
    exportlp->add_option("file", input, "network or ODE file")->required();
    ModelArgs eargs = margs;
    eargs.attach(exportlp);
    std::string import_path;
    exportlp->add_option("--import", import_path,
                         "solution file: decode and certify instead");
    exportlp->add_option("--lp", lp_out, "LP destination (default: stdout)");
    exportlp->add_flag("--json", output.json, "JSON to stdout (import mode)");
    exportlp->add_option("--out", output.out, "write JSON here (import mode)");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e);
      return code == 0 ? 0 : 1;
    }

    if (*analyze) return cmd_analyze(input, output);
    if (*realize) return cmd_realize(input, out_path, realize_json);
    if (*find) return cmd_find(fargs);
    if (*verify) return cmd_verify(input, candidate, c_text, vargs, output);
    if (*exportlp)
      return cmd_export_lp(input, import_path, lp_out, eargs, output);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
