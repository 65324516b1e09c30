#pragma once

// Text and JSON reports. Rationals serialize as "p/q" strings; every list is
// emitted in a fixed order so output is byte-identical across runs.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crnmss/classify.hpp"
#include "crnmss/defone.hpp"
#include "crnmss/dynamics.hpp"
#include "crnmss/parser.hpp"
#include "crnmss/structure.hpp"
#include "crnmss/verdict.hpp"

namespace crnmss {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchemaVersion = "1.0";

namespace report {

inline Json rationals(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

inline Json indices(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto i : v) out.push_back(i);
  return out;
}

inline Json names_of(const Network& n, const std::vector<std::size_t>& species) {
  Json out = Json::array();
  for (auto i : species) out.push_back(n.species()[i]);
  return out;
}

inline std::string complex_text(const Network& n, std::size_t k) { return format_complex(n.complexes()[k], n.species()); }

inline std::string reaction_text(const Network& n, std::size_t r) { return format_reaction(n.reactions()[r], n.species()); }

/// Fixed 12-digit formatting for floating-point values.
inline std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline Json structure(const Network& n) {
  const auto ls = linkage_structure(n);
  const auto def = deficiency_report(n, ls);
  const auto reg = regularity_report(n, ls);
  Json j;
  Json complexes = Json::array();
  for (std::size_t k = 0; k < n.complexes().size(); ++k) complexes.push_back(complex_text(n, k));
  j["complexes"] = complexes;
  Json lc = Json::array(), sc = Json::array(), tc = Json::array();
  for (const auto& c : ls.linkage_classes) lc.push_back(indices(c));
  for (const auto& c : ls.strong_classes) sc.push_back(indices(c));
  for (auto t : ls.terminal_classes) tc.push_back(indices(ls.strong_classes[t]));
  j["linkage_classes"] = lc;
  j["strong_classes"] = sc;
  j["terminal_classes"] = tc;
  j["stoichiometric_dimension"] = def.d;
  Json per = Json::array();
  for (auto d : def.per_linkage) per.push_back(d);
  j["deficiency"] = {{"n", def.n}, {"l", def.l}, {"d", def.d}, {"delta", def.delta}, {"per_linkage", per}};
  Json r;
  r["positively_dependent"] = reg.positively_dependent;
  r["alpha"] = reg.alpha ? rationals(*reg.alpha) : Json(nullptr);
  r["one_terminal_per_linkage"] = reg.one_terminal_per_linkage;
  r["cut_pair_disconnects"] = reg.cut_pair_disconnects;
  r["failing_pair"] = reg.failing_pair ? Json::array({reg.failing_pair->first, reg.failing_pair->second}) : Json(nullptr);
  r["regular"] = reg.regular;
  j["regularity"] = r;
  return j;
}

inline Json atom(const Network& n, const AtomWitness& a) {
  return {{"form", atom_form_name(a.form)},
          {"reaction", format_reaction(a.reaction, n.species())},
          {"reaction_index", a.reaction_index},
          {"species", names_of(n, a.species)}};
}

inline Json verdict(const Network& n, const MssVerdict& v) {
  Json j;
  j["outcome"] = outcome_name(v.outcome);
  j["provenance"] = provenance_name(v.provenance);
  Json atoms = Json::array();
  for (const auto& a : v.atoms) atoms.push_back(atom(n, a));
  j["atoms"] = atoms;
  if (v.embedding) {
    const auto& e = *v.embedding;
    Json kept = Json::array(), dropped = Json::array();
    for (auto r : e.kept_reactions) kept.push_back(reaction_text(n, r));
    for (auto r : e.dropped_reactions) dropped.push_back(reaction_text(n, r));
    j["embedding"] = {{"atom", e.atom_name},
                      {"kept_reactions", kept},
                      {"dropped_reactions", dropped},
                      {"kept_species", names_of(n, e.kept_species)},
                      {"dropped_species", names_of(n, e.dropped_species)}};
  } else {
    j["embedding"] = nullptr;
  }
  j["mu"] = v.mu ? rationals(*v.mu) : Json(nullptr);
  j["checklist"] = v.checklist;
  j["budget_exceeded"] = v.budget_exceeded;
  return j;
}

inline Json trace(const Network& n, const AlgorithmTrace& t) {
  Json passes = Json::array();
  for (const auto& pass : t.passes) {
    Json p;
    p["orientation"] = pass.orientation > 0 ? "g" : "-g";
    p["step1_g"] = rationals(pass.g.g);
    Json cuts = Json::array();
    for (const auto& c : pass.cuts)
      cuts.push_back({{"p", complex_text(n, c.p)}, {"q", complex_text(n, c.q)}, {"sign", c.sign}});
    p["step2_cut_pairs"] = cuts;
    Json parts = Json::array();
    for (const auto& rec : pass.partitions) {
      Json part;
      auto block = [&](const ComplexSet& s) {
        Json out = Json::array();
        for (auto k : s) out.push_back(complex_text(n, k));
        return out;
      };
      part["step3_partition"] = {{"U", block(rec.partition.U)}, {"M", block(rec.partition.M)}, {"L", block(rec.partition.L)}};
      Json rels = Json::array();
      for (const auto& rel : rec.system.relations)
        rels.push_back({{"step", rel.step},
                        {"relation", "(" + complex_text(n, rel.lhs) + ") - (" + complex_text(n, rel.rhs) + ") " +
                                         relop_symbol(rel.op) + " 0"},
                        {"coefficients", rationals(rel.coeffs)}});
      part["steps4_7_relations"] = rels;
      part["step8_result"] = solve_status_name(rec.result.status);
      part["mu"] = rec.result.mu ? rationals(*rec.result.mu) : Json(nullptr);
      parts.push_back(part);
    }
    p["partitions"] = parts;
    passes.push_back(p);
  }
  return {{"passes", passes}};
}

inline Json rate_table(const Network& n, const RateAssignment& rates) {
  const auto names = rate_names(n);
  Json out = Json::array();
  for (const auto& r : n.reactions()) {
    auto it = rates.find(r);
    out.push_back({{"reaction", format_reaction(r, n.species())},
                   {"name", names.at(r)},
                   {"rate", it == rates.end() ? Json(nullptr) : Json(to_string(it->second))}});
  }
  return out;
}

inline Json states(const SteadyStateSet& s) {
  Json list = Json::array();
  for (const auto& st : s.states) {
    Json x = Json::array();
    for (auto v : st.x) x.push_back(decimal(v));
    list.push_back({{"x", x},
                    {"exact", st.exact ? rationals(*st.exact) : Json(nullptr)},
                    {"nondegenerate", !st.degenerate},
                    {"residual", decimal(st.residual)},
                    {"verified", st.verified}});
  }
  return {{"certainty", certainty_name(s.count_certainty)}, {"states", list}};
}

inline Json witness(const Network& host, const WitnessReport& w) {
  Json j;
  j["atom"] = atom(host, w.atom);
  j["atom_network"] = render_network(make_document(w.atom_network, true));
  j["rates"] = rate_table(w.atom_network, w.rates);
  if (w.atom1) {
    const auto& p = *w.atom1_params;
    j["analysis"] = {{"family", "SingleSpecies"},
                  {"parameters", {{"a1", p.a1}, {"a2", p.a2}, {"kX", to_string(p.kX)}, {"lX", to_string(p.lX)},
                                  {"k", to_string(p.k)}}},
                  {"k_star", to_string(w.atom1->k_star)},
                  {"regime", regime_name(w.atom1->regime)},
                  {"sturm_count", w.atom1->sturm_count},
                  {"exact_states", states(w.atom1->states)}};
  } else {
    const auto& p = *w.atom2_params;
    j["analysis"] = {{"family", "TwoSpecies"},
                  {"parameters", {{"b1", p.b1}, {"b2", p.b2}, {"kX", to_string(p.kX)}, {"kY", to_string(p.kY)},
                                  {"lX", to_string(p.lX)}, {"lY", to_string(p.lY)}, {"k", to_string(p.k)}}},
                  {"H", to_string(w.atom2->H)},
                  {"regime", regime_name(w.atom2->regime)},
                  {"exact_states", states(w.atom2->states)}};
  }
  j["scan"] = states(w.states);
  j["scope"] = "steady states are computed for the embedded atom network; lifting them to the full network is not constructed";
  return j;
}

inline Json envelope(const std::string& command, const NetworkDocument& doc) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  j["network_echo"] = render_network(doc);
  j["species"] = doc.network.species();
  j["fully_open"] = is_fully_open(doc.network);
  return j;
}

}  // namespace report

// Text rendering.

inline std::string format_rationals(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

inline std::string text_structure(const Network& n) {
  const auto ls = linkage_structure(n);
  const auto def = deficiency_report(n, ls);
  const auto reg = regularity_report(n, ls);
  std::ostringstream out;
  auto set_text = [&](const ComplexSet& s) {
    std::string t = "{";
    for (std::size_t i = 0; i < s.size(); ++i) t += (i ? ", " : "") + report::complex_text(n, s[i]);
    return t + "}";
  };
  out << "species: ";
  for (std::size_t i = 0; i < n.species_count(); ++i) out << (i ? ", " : "") << n.species()[i];
  out << "\nfully open: " << (is_fully_open(n) ? "yes" : "no") << "\n";
  out << "linkage classes:";
  for (const auto& c : ls.linkage_classes) out << " " << set_text(c);
  out << "\nterminal strong linkage classes:";
  for (auto t : ls.terminal_classes) out << " " << set_text(ls.strong_classes[t]);
  out << "\ndeficiency: n = " << def.n << ", l = " << def.l << ", d = " << def.d << ", delta = " << def.delta
      << ", per linkage class = [";
  for (std::size_t j = 0; j < def.per_linkage.size(); ++j) out << (j ? ", " : "") << def.per_linkage[j];
  out << "]\nregular: " << (reg.regular ? "yes" : "no") << " (positively dependent: "
      << (reg.positively_dependent ? "yes" : "no")
      << ", one terminal class per linkage class: " << (reg.one_terminal_per_linkage ? "yes" : "no")
      << ", terminal pairs disconnect: " << (reg.cut_pair_disconnects ? "yes" : "no") << ")\n";
  return out.str();
}

inline std::string text_verdict(const Network& n, const MssVerdict& v) {
  std::ostringstream out;
  out << "verdict: " << outcome_name(v.outcome) << " (" << provenance_name(v.provenance) << ")\n";
  for (const auto& a : v.atoms) {
    out << "atom: " << atom_form_name(a.form) << " in " << format_reaction(a.reaction, n.species()) << " on ";
    for (std::size_t i = 0; i < a.species.size(); ++i) out << (i ? ", " : "") << n.species()[a.species[i]];
    out << "\n";
  }
  if (v.embedding) {
    const auto& e = *v.embedding;
    out << "embedding of atom '" << e.atom_name << "': keep";
    for (auto r : e.kept_reactions) out << " [" << report::reaction_text(n, r) << "]";
    out << "; drop reactions";
    if (e.dropped_reactions.empty()) out << " none";
    for (auto r : e.dropped_reactions) out << " [" << report::reaction_text(n, r) << "]";
    out << "; drop species";
    if (e.dropped_species.empty()) out << " none";
    for (auto s : e.dropped_species) out << " " << n.species()[s];
    out << "\n";
  }
  if (v.mu) out << "mu: " << format_rationals(*v.mu) << "\n";
  for (const auto& c : v.checklist) out << "  - " << c << "\n";
  if (v.budget_exceeded) out << "containment search budget exceeded\n";
  return out.str();
}

inline std::string text_trace(const Network& n, const AlgorithmTrace& t) {
  std::ostringstream out;
  auto set_text = [&](const ComplexSet& s) {
    std::string r = "{";
    for (std::size_t i = 0; i < s.size(); ++i) r += (i ? ", " : "") + report::complex_text(n, s[i]);
    return r + "}";
  };
  for (const auto& pass : t.passes) {
    out << "pass with " << (pass.orientation > 0 ? "g" : "-g") << "\n";
    out << "  step 1: g = " << format_rationals(pass.g.g) << "\n";
    for (const auto& c : pass.cuts)
      out << "  step 2: sign of (" << report::complex_text(n, c.p) << ") - (" << report::complex_text(n, c.q)
          << ") is " << c.sign << "\n";
    for (const auto& rec : pass.partitions) {
      out << "  step 3: U = " << set_text(rec.partition.U) << ", M = " << set_text(rec.partition.M)
          << ", L = " << set_text(rec.partition.L) << "\n";
      for (const auto& rel : rec.system.relations)
        out << "    step " << rel.step << ": (" << report::complex_text(n, rel.lhs) << ") - ("
            << report::complex_text(n, rel.rhs) << ") " << relop_symbol(rel.op) << " 0\n";
      out << "    step 8: " << solve_status_name(rec.result.status);
      if (rec.result.mu) out << ", mu = " << format_rationals(*rec.result.mu);
      out << "\n";
    }
  }
  return out.str();
}

inline std::string text_states(const SteadyStateSet& s, const std::vector<std::string>& names) {
  std::ostringstream out;
  for (const auto& st : s.states) {
    out << "    (";
    for (std::size_t i = 0; i < st.x.size(); ++i) out << (i ? ", " : "") << names[i] << " = " << report::decimal(st.x[i]);
    out << ")";
    if (st.exact) out << " exact " << format_rationals(*st.exact);
    out << (st.degenerate ? " degenerate" : " nondegenerate") << ", residual " << report::decimal(st.residual) << "\n";
  }
  return out.str();
}

inline std::string text_witness(const Network& host, const WitnessReport& w) {
  std::ostringstream out;
  out << "atom: " << atom_form_name(w.atom.form) << " in " << format_reaction(w.atom.reaction, host.species()) << "\n";
  out << "atom network:\n";
  std::istringstream lines(render_network(make_document(w.atom_network, true)));
  for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
  out << "rates:\n";
  const auto names = rate_names(w.atom_network);
  for (const auto& r : w.atom_network.reactions())
    out << "  " << names.at(r) << " = " << to_string(w.rates.at(r)) << "  (" << format_reaction(r, w.atom_network.species())
        << ")\n";
  if (w.atom1) {
    out << "k* = " << to_string(w.atom1->k_star) << ", k = " << to_string(w.atom1_params->k) << ", regime "
        << regime_name(w.atom1->regime) << ", Sturm count " << w.atom1->sturm_count << "\n";
    out << "  exact analysis:\n" << text_states(w.atom1->states, w.atom_network.species());
  } else {
    out << "H = " << to_string(w.atom2->H) << ", regime " << regime_name(w.atom2->regime) << "\n";
    out << "  exact analysis:\n" << text_states(w.atom2->states, w.atom_network.species());
  }
  out << "  numeric scan:\n" << text_states(w.states, w.atom_network.species());
  out << "note: states are for the embedded atom network; lifting to the full network is not constructed\n";
  return out.str();
}

/// A rendered command result: both output forms and the exit code.
struct CommandReport {
  Json json;
  std::string text;
  int exit_code = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBudget = 3;

inline CommandReport analyze_report(const NetworkDocument& doc, const ClassifyOptions& opt = {},
                                    bool with_trace = false) {
  const Network& n = doc.network;
  const MssVerdict v = classify(n, opt);
  CommandReport rep;
  rep.json = report::envelope("analyze", doc);
  rep.json["structure"] = report::structure(n);
  rep.json["verdict"] = report::verdict(n, v);
  std::optional<AlgorithmTrace> trace;
  if (with_trace && !algorithm_hypothesis_failure(n, linkage_structure(n))) {
    trace.emplace();
    try {
      run_algorithm(n, &*trace);
    } catch (const Error&) {
      trace.reset();
    }
  }
  rep.json["trace"] = trace ? report::trace(n, *trace) : Json(nullptr);
  rep.text = "network:\n";
  std::istringstream lines(render_network(doc));
  for (std::string line; std::getline(lines, line);) rep.text += "  " + line + "\n";
  rep.text += text_structure(n) + text_verdict(n, v);
  if (trace) rep.text += text_trace(n, *trace);
  rep.exit_code = v.budget_exceeded ? kExitBudget : kExitOk;
  return rep;
}

/// Throws HypothesesFailed when the algorithm does not apply.
inline CommandReport defone_report(const NetworkDocument& doc, bool with_trace = false) {
  const Network& n = doc.network;
  require_algorithm_hypotheses(n, linkage_structure(n));
  AlgorithmTrace trace;
  const MssVerdict v = run_algorithm(n, with_trace ? &trace : nullptr);
  CommandReport rep;
  rep.json = report::envelope("defone", doc);
  rep.json["structure"] = report::structure(n);
  rep.json["verdict"] = report::verdict(n, v);
  rep.json["trace"] = with_trace ? report::trace(n, trace) : Json(nullptr);
  rep.text = text_structure(n) + text_verdict(n, v);
  if (with_trace) rep.text += text_trace(n, trace);
  return rep;
}

/// Throws NoMssVerdict for NoMSS networks and NotOneReaction when no
/// one-reaction atom is available to witness.
inline CommandReport witness_report(const NetworkDocument& doc, std::optional<std::uint64_t> seed = std::nullopt) {
  const Network& n = doc.network;
  const MssVerdict v = classify(n);
  if (v.outcome == Outcome::NoMss)
    throw Error(ErrorCode::NoMssVerdict, std::string("verdict is NoMSS (") + provenance_name(v.provenance) + ")");
  if (v.atoms.empty()) throw Error(ErrorCode::NotOneReaction, "no one-reaction atom to witness");
  const WitnessReport w = build_witness(v.atoms.front(), seed);
  CommandReport rep;
  rep.json = report::envelope("witness", doc);
  rep.json["verdict"] = report::verdict(n, v);
  rep.json["witness"] = report::witness(n, w);
  rep.text = text_verdict(n, v) + text_witness(n, w);
  return rep;
}

inline CommandReport atoms_report(const NetworkDocument& doc) {
  const Network& n = doc.network;
  const auto atoms = find_one_reaction_atoms(n);
  CommandReport rep;
  rep.json = report::envelope("atoms", doc);
  Json list = Json::array();
  for (const auto& a : atoms) {
    list.push_back(report::atom(n, a));
    rep.text += atom_form_name(a.form) + " in " + format_reaction(a.reaction, n.species()) + " on ";
    for (std::size_t i = 0; i < a.species.size(); ++i) rep.text += (i ? ", " : "") + n.species()[a.species[i]];
    rep.text += "\n";
  }
  if (atoms.empty()) rep.text = "no one-reaction atoms\n";
  rep.json["atoms"] = list;
  return rep;
}

inline CommandReport odes_report(const NetworkDocument& doc) {
  const Network& n = doc.network;
  CommandReport rep;
  rep.json = report::envelope("odes", doc);
  const auto lines = format_odes(n, doc.rate_hints);
  rep.json["rates"] = report::rate_table(n, doc.rate_hints);
  rep.json["odes"] = lines;
  for (const auto& l : lines) rep.text += l + "\n";
  return rep;
}

}  // namespace crnmss
