#include "crn/report.hpp"

#include <utility>

#include "crn/parse.hpp"

namespace crn {

Json rational_json(const Rat& r) {
  return Json{{"exact", rational_string(r)}, {"decimal", decimal_string(r)}};
}

const char* to_string(ConjugacyMode mode) {
  return mode == ConjugacyMode::DynamicEquivalence ? "dynequiv" : "conjugate";
}

const char* to_string(TheoremKind theorem) {
  return theorem == TheoremKind::DeficiencyOne ? "dot" : "boros";
}

Json report_json(const DeficiencyReport& rep) {
  Json classes = Json::array();
  for (const ClassStats& cs : rep.classes)
    classes.push_back(Json{{"complexes", cs.complexes},
                           {"size", cs.n},
                           {"rank", cs.s},
                           {"deficiency", cs.deficiency}});
  return Json{
      {"complexes", rep.n},
      {"linkage_classes", rep.linkage_count},
      {"rank", rep.s},
      {"deficiency", rep.deficiency},
      {"terminal_strong_classes", rep.terminal_count},
      {"classes", std::move(classes)},
      {"weakly_reversible", rep.weakly_reversible},
      {"deficiency_one",
       Json{{"class_deficiencies_bounded", rep.dot_deficiencies_bounded},
            {"sum_matches", rep.dot_sum_matches},
            {"one_terminal_per_class", rep.dot_terminal_matches},
            {"satisfied", rep.dot_satisfied}}},
      {"deficiency_sum_condition", rep.boros_satisfied}};
}

Json analysis_json(const MassActionSystem& sys) {
  const Network& net = sys.net;
  Json complexes = Json::array();
  for (int i = 0; i < net.complex_count(); ++i)
    complexes.push_back(net.complex_name(i));
  Json reactions = Json::array();
  for (std::size_t r = 0; r < net.reactions.size(); ++r)
    reactions.push_back(Json{{"source", net.reactions[r].source},
                             {"target", net.reactions[r].target},
                             {"rate", rational_json(sys.rates[r])}});

  LinkageDecomposition dec = decompose(net);
  Json strong = Json::array(), terminal = Json::array();
  for (std::size_t k = 0; k < dec.strong_classes.size(); ++k) {
    strong.push_back(dec.strong_classes[k]);
    if (dec.terminal[k]) terminal.push_back(dec.strong_classes[k]);
  }

  return Json{
      {"species", net.species},
      {"complexes", std::move(complexes)},
      {"reactions", std::move(reactions)},
      {"isolated_complexes", isolated_complexes(net)},
      {"partitions", Json{{"linkage_classes", dec.linkage_classes},
                          {"strong_classes", std::move(strong)},
                          {"terminal_strong_classes", std::move(terminal)}}},
      {"dimensions", Json{{"stoichiometric", stoichiometric_dim(net)},
                          {"kinetic", kinetic_dim(sys)}}},
      {"structure", report_json(deficiency_report(net))}};
}

Json realization_json(const Realization& real) {
  const Network& net = real.sys.net;
  Json cs = Json::array();
  for (const Rat& v : real.c) cs.push_back(rational_json(v));
  Json reactions = Json::array();
  for (std::size_t r = 0; r < net.reactions.size(); ++r) {
    const Reaction& rx = net.reactions[r];
    if (rx.source == rx.target) continue;  // spectator bookkeeping loops
    reactions.push_back(Json{{"source", net.complex_name(rx.source)},
                             {"target", net.complex_name(rx.target)},
                             {"rate", rational_json(real.sys.rates[r])}});
  }
  Json iso = Json::array();
  for (int i : real.isolated) iso.push_back(net.complex_name(i));
  return Json{{"species", net.species},
              {"c", std::move(cs)},
              {"reactions", std::move(reactions)},
              {"isolated_complexes", std::move(iso)},
              {"network_file", write_network(real.sys)}};
}

Json certificate_json(const Certificate& cert, const Network& net,
                      int sample_points) {
  const ConjugacyCheck& cj = cert.conjugacy;
  Json iso = Json::array();
  for (int i : cert.isolated) iso.push_back(net.complex_name(i));
  return Json{
      {"conjugacy", Json{{"columns_ok", cj.columns_ok},
                         {"points_ok", cj.points_ok},
                         {"sample_points", sample_points},
                         {"residual", rational_json(cj.residual)},
                         {"failure",
                          cj.failure.empty() ? Json() : Json(cj.failure)}}},
      {"dynamically_equivalent", cert.dynamically_equivalent},
      {"isolated_complexes", std::move(iso)},
      {"full", report_json(cert.full)},
      {"core", report_json(cert.core)},
      {"full_core_agree", cert.lemma_consistent},
      {"weakly_reversible", cert.weakly_reversible},
      {"theorem", to_string(cert.theorem)},
      {"theorem_satisfied", cert.theorem_ok},
      {"certified", cert.certified},
      {"conclusion", cert.conclusion}};
}

namespace {

const char* to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::Certified: return "certified";
    case SearchStatus::Infeasible: return "infeasible";
    case SearchStatus::Limit: return "limit";
    default: return "certify-failed";
  }
}

const char* to_string(MilpStatus status) {
  switch (status) {
    case MilpStatus::Optimal: return "optimal";
    case MilpStatus::Infeasible: return "infeasible";
    default: return "limit";
  }
}

}  // namespace

Json search_json(const SearchOutcome& out, const MassActionSystem& target,
                 const Json& config) {
  Json solver{{"status", to_string(out.solve.status)},
              {"objective", out.solve.has_solution
                                ? rational_json(out.solve.objective)
                                : Json()},
              {"nodes", out.solve.nodes},
              {"lp_iterations", out.solve.lp_iterations},
              {"variables", out.vars},
              {"binaries", out.binaries},
              {"rows", out.rows},
              {"class_slots", out.nclasses},
              {"attempts", out.attempts},
              {"seed_used", out.seed_used}};
  Json doc{{"status", to_string(out.status)},
           {"config", config},
           {"solver", std::move(solver)},
           {"target", analysis_json(target)}};
  if (out.found) {
    doc["realization"] = realization_json(out.realization);
    doc["verification"] = certificate_json(
        out.certificate, out.realization.sys.net, out.check_points);
  } else {
    doc["realization"] = Json();
    doc["verification"] = Json();
  }
  return doc;
}

}  // namespace crn
