#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "crnmss/defone.hpp"
#include "crnmss/error.hpp"
#include "crnmss/model.hpp"
#include "crnmss/parser.hpp"
#include "crnmss/structure.hpp"
#include "crnmss/verdict.hpp"

namespace crnmss {

/// Deficiency Zero and Deficiency One Theorems. Never returns MSS.
inline MssVerdict deficiency_theorems_verdict(const Network& n) {
  const auto ls = linkage_structure(n);
  const auto def = deficiency_report(n, ls);
  MssVerdict v;
  std::vector<int> terminals(ls.linkage_classes.size(), 0);
  for (auto t : ls.terminal_classes) ++terminals[ls.linkage_of[ls.strong_classes[t].front()]];

  bool weakly_reversible = true;
  for (auto t : ls.terminal_classes)
    if (ls.strong_classes[t].size() != ls.linkage_classes[ls.linkage_of[ls.strong_classes[t].front()]].size())
      weakly_reversible = false;
  for (int t : terminals)
    if (t != 1) weakly_reversible = false;
  if (def.delta == 0 && weakly_reversible) {
    v.outcome = Outcome::NoMss;
    v.provenance = Provenance::DefZeroThm;
    v.checklist = {"deficiency 0", "each linkage class is a terminal strong linkage class"};
    return v;
  }
  const bool one_terminal = std::all_of(terminals.begin(), terminals.end(), [](int t) { return t == 1; });
  const bool small = std::all_of(def.per_linkage.begin(), def.per_linkage.end(), [](long d) { return d <= 1; });
  if (one_terminal && small && def.per_linkage_sum() == def.delta) {
    v.outcome = Outcome::NoMss;
    v.provenance = Provenance::DefOneThm;
    v.checklist = {"each linkage class has one terminal strong linkage class",
                   "every linkage deficiency is at most 1",
                   "linkage deficiencies sum to " + std::to_string(def.delta)};
    return v;
  }
  v.checklist.push_back("deficiency theorems do not apply");
  return v;
}

/// The non-flow reaction of a one-reaction network. For a reversible pair the
/// canonically smaller direction is returned.
struct OneReaction {
  Reaction reaction;
  bool reversible = false;
};

inline std::optional<OneReaction> one_reaction_shape(const Network& n) {
  const auto idx = non_flow_reaction_indices(n);
  if (idx.size() == 1) return OneReaction{n.reactions()[idx[0]], false};
  if (idx.size() == 2 && n.reactions()[idx[0]].reversed() == n.reactions()[idx[1]])
    return OneReaction{n.reactions()[idx[0]], true};
  return std::nullopt;
}

inline bool is_one_reaction_fully_open(const Network& n) {
  return is_fully_open(n) && one_reaction_shape(n).has_value();
}

/// Scans non-flow reactions for the two one-reaction atom forms.
inline std::vector<AtomWitness> find_one_reaction_atoms(const Network& n) {
  std::vector<AtomWitness> out;
  const std::size_t s = n.species_count();
  for (auto r : non_flow_reaction_indices(n)) {
    const Reaction& rx = n.reactions()[r];
    for (std::size_t j = 0; j < s; ++j) {
      const int c = rx.reactant[j], d = rx.product[j];
      if (d > c && c > 1)
        out.push_back({rx, r, {j}, {AtomForm::Kind::SingleSpecies, c, d}});
    }
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j)
        if (rx.reactant[i] == 1 && rx.reactant[j] == 1 && rx.product[i] > 1 && rx.product[j] > 1)
          out.push_back({rx, r, {i, j}, {AtomForm::Kind::TwoSpecies, rx.product[i], rx.product[j]}});
  }
  return out;
}

inline MssVerdict one_reaction_mss(const Network& n) {
  if (!is_fully_open(n)) throw Error(ErrorCode::NotFullyOpen, "network lacks some flow reaction");
  const auto shape = one_reaction_shape(n);
  if (!shape) throw Error(ErrorCode::NotOneReaction, "network does not have exactly one non-flow reaction");
  const Reaction& r = shape->reaction;
  long up = 0, down = 0;  // sum_{b>a} a_i and sum_{a>b} b_i
  for (std::size_t i = 0; i < n.species_count(); ++i) {
    if (r.product[i] > r.reactant[i]) up += r.reactant[i];
    if (r.reactant[i] > r.product[i]) down += r.product[i];
  }
  MssVerdict v;
  v.provenance = Provenance::OneReactionCriterion;
  const bool mss = up > 1 || (shape->reversible && down > 1);
  v.checklist.push_back("sum of a_i over b_i > a_i is " + std::to_string(up));
  if (shape->reversible) v.checklist.push_back("sum of b_i over a_i > b_i is " + std::to_string(down));
  if (mss) {
    v.outcome = Outcome::Mss;
    v.atoms = find_one_reaction_atoms(n);
  } else {
    v.outcome = Outcome::NoMss;
  }
  return v;
}

/// Species present in both complexes with a strictly larger product coefficient.
inline std::vector<std::size_t> autocatalytic_species(const Reaction& r) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < r.reactant.size(); ++i)
    if (r.reactant[i] >= 1 && r.product[i] > r.reactant[i]) out.push_back(i);
  return out;
}

/// Embedded network: keep the listed reactions, delete the other species from
/// their complexes, drop trivial and duplicate reactions, then drop species
/// that no longer occur.
inline Network embed_restrict(const Network& n, const std::vector<std::size_t>& keep_species,
                              const std::vector<std::size_t>& keep_reactions) {
  std::vector<std::size_t> species = keep_species;
  std::sort(species.begin(), species.end());
  species.erase(std::unique(species.begin(), species.end()), species.end());
  auto project = [&](const Complex& c) {
    Complex out = zero_complex(species.size());
    for (std::size_t i = 0; i < species.size(); ++i) out.coeffs[i] = c[species[i]];
    return out;
  };
  std::vector<Reaction> rs;
  for (auto r : keep_reactions) {
    Reaction p{project(n.reactions()[r].reactant), project(n.reactions()[r].product)};
    if (p.reactant != p.product) rs.push_back(p);
  }
  if (rs.empty()) throw Error(ErrorCode::EmptyResult, "no reactions survive the restriction");
  std::vector<std::size_t> present;
  for (std::size_t i = 0; i < species.size(); ++i)
    for (const auto& r : rs)
      if (r.reactant[i] != 0 || r.product[i] != 0) {
        present.push_back(i);
        break;
      }
  std::vector<std::string> names;
  for (auto i : present) names.push_back(n.species()[species[i]]);
  for (auto& r : rs) {
    Complex a = zero_complex(present.size()), b = zero_complex(present.size());
    for (std::size_t k = 0; k < present.size(); ++k) {
      a.coeffs[k] = r.reactant[present[k]];
      b.coeffs[k] = r.product[present[k]];
    }
    r = {a, b};
  }
  return build_network(std::move(names), std::move(rs));
}

/// Network whose only reactions are the atom's non-flow core.
inline Network atom_core_network(const AtomForm& f) {
  if (f.kind == AtomForm::Kind::SingleSpecies)
    return build_network({"X"}, {{Complex({f.first}), Complex({f.second})}});
  return build_network({"X", "Y"}, {{Complex({1, 1}), Complex({f.first, f.second})}});
}

/// Drops flow reactions and species that then no longer occur.
inline Network strip_flows(const Network& n) {
  std::vector<std::size_t> all(n.species_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto idx = non_flow_reaction_indices(n);
  if (idx.empty()) throw Error(ErrorCode::AtomNotOpen, "atom has no non-flow reactions");
  return embed_restrict(n, all, idx);
}

struct NamedAtom {
  std::string name;
  Network core;  // non-flow reactions only
};

inline std::size_t default_search_budget() {
  if (const char* env = std::getenv("CRNMSS_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

struct ContainmentResult {
  std::optional<Embedding> embedding;
  bool budget_exceeded = false;
  std::size_t nodes = 0;
};

namespace detail {

inline std::vector<Reaction> sorted_reactions(std::vector<Reaction> rs) {
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  return rs;
}

inline std::vector<std::pair<int, int>> molecularity_signature(const std::vector<Reaction>& rs) {
  std::vector<std::pair<int, int>> sig;
  for (const auto& r : rs) sig.emplace_back(r.reactant.molecularity(), r.product.molecularity());
  std::sort(sig.begin(), sig.end());
  return sig;
}

// Calls f on each k-subset of {0..n-1} in lexicographic order until f returns true.
template <typename F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (f(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Searches the host's non-flow reactions for an embedded copy of an atom
/// core, up to species renaming. The first witness in (reaction subset,
/// species subset, permutation) lexicographic order is returned.
inline ContainmentResult contains_embedded(const Network& host, const Network& atom,
                                           const std::string& atom_name = "",
                                           std::size_t budget = default_search_budget()) {
  const auto core_idx = non_flow_reaction_indices(atom);
  if (core_idx.empty()) throw Error(ErrorCode::AtomNotOpen, "atom has no non-flow reactions");
  const Network core = strip_flows(atom);
  const std::size_t ks = core.species_count();
  const std::size_t m = core.reactions().size();
  const auto target = detail::sorted_reactions(core.reactions());
  const auto target_sig = detail::molecularity_signature(target);

  const auto host_idx = non_flow_reaction_indices(host);
  ContainmentResult res;
  std::vector<std::size_t> perm(ks);

  detail::for_each_subset(host_idx.size(), m, [&](const std::vector<std::size_t>& rsel) {
    std::vector<std::size_t> chosen;
    for (auto i : rsel) chosen.push_back(host_idx[i]);
    std::vector<std::size_t> occurring;
    for (std::size_t sp = 0; sp < host.species_count(); ++sp)
      for (auto r : chosen)
        if (host.reactions()[r].reactant[sp] || host.reactions()[r].product[sp]) {
          occurring.push_back(sp);
          break;
        }
    return detail::for_each_subset(occurring.size(), ks, [&](const std::vector<std::size_t>& ssel) {
      if (++res.nodes > budget) {
        res.budget_exceeded = true;
        return true;
      }
      std::vector<std::size_t> species;
      for (auto i : ssel) species.push_back(occurring[i]);
      // Restrict; drop trivial and flow images (flows exist in both fully open networks).
      std::vector<Reaction> image;
      for (auto r : chosen) {
        Reaction p{zero_complex(ks), zero_complex(ks)};
        for (std::size_t k = 0; k < ks; ++k) {
          p.reactant.coeffs[k] = host.reactions()[r].reactant[species[k]];
          p.product.coeffs[k] = host.reactions()[r].product[species[k]];
        }
        if (p.reactant != p.product && !is_flow_reaction(p)) image.push_back(p);
      }
      image = detail::sorted_reactions(image);
      if (image.size() != m || detail::molecularity_signature(image) != target_sig) return false;
      for (std::size_t k = 0; k < ks; ++k) perm[k] = k;
      do {
        // perm[k] = atom species that host-subset species k plays.
        std::vector<Reaction> mapped;
        for (const auto& r : image) {
          Reaction q{zero_complex(ks), zero_complex(ks)};
          for (std::size_t k = 0; k < ks; ++k) {
            q.reactant.coeffs[perm[k]] = r.reactant[k];
            q.product.coeffs[perm[k]] = r.product[k];
          }
          mapped.push_back(q);
        }
        if (detail::sorted_reactions(mapped) == target) {
          Embedding e;
          e.atom_name = atom_name;
          e.kept_reactions = chosen;
          for (auto r : host_idx)
            if (std::find(chosen.begin(), chosen.end(), r) == chosen.end()) e.dropped_reactions.push_back(r);
          e.kept_species.assign(ks, 0);
          for (std::size_t k = 0; k < ks; ++k) e.kept_species[perm[k]] = species[k];
          for (auto sp : occurring)
            if (std::find(species.begin(), species.end(), sp) == species.end()) e.dropped_species.push_back(sp);
          res.embedding = std::move(e);
          return true;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      return false;
    });
  });
  if (res.budget_exceeded) res.embedding.reset();
  return res;
}

/// Every "*.crn" file in dir, sorted by file name, parsed as an atom core.
inline std::vector<NamedAtom> load_atom_catalog(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".crn") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<NamedAtom> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream buf;
    buf << in.rdbuf();
    out.push_back({f.stem().string(), strip_flows(parse_network(buf.str()).network)});
  }
  return out;
}

struct ClassifyOptions {
  std::vector<NamedAtom> user_atoms;
  std::size_t budget = default_search_budget();
};

/// Orchestrates the theorem-level checks. Never reports NoMSS from the
/// absence of atoms.
inline MssVerdict classify(const Network& n, const ClassifyOptions& opt = {}) {
  const bool open = is_fully_open(n);
  if (open && one_reaction_shape(n)) return one_reaction_mss(n);

  if (auto v = deficiency_theorems_verdict(n); v.outcome == Outcome::NoMss) return v;

  bool budget_exceeded = false;
  std::vector<AtomWitness> atoms;
  if (open) {
    atoms = find_one_reaction_atoms(n);
    if (!atoms.empty()) {
      MssVerdict v;
      v.outcome = Outcome::Mss;
      v.provenance = Provenance::EmbeddedAtom;
      v.atoms = atoms;
      v.checklist.push_back("contains a one-reaction atom as an embedded network");
      return v;
    }
    for (const auto& atom : opt.user_atoms) {
      auto found = contains_embedded(n, atom.core, atom.name, opt.budget);
      budget_exceeded = budget_exceeded || found.budget_exceeded;
      if (found.embedding) {
        MssVerdict v;
        v.outcome = Outcome::Mss;
        v.provenance = Provenance::UserAtom;
        v.embedding = found.embedding;
        v.checklist.push_back("contains user atom '" + atom.name + "' as an embedded network");
        return v;
      }
    }
  }

  const auto ls = linkage_structure(n);
  if (auto why = algorithm_hypothesis_failure(n, ls); !why) {
    try {
      auto v = run_algorithm(n);
      v.budget_exceeded = budget_exceeded;
      return v;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded && e.code() != ErrorCode::NoOrientation &&
          e.code() != ErrorCode::KernelDimensionUnexpected)
        throw;
      MssVerdict v;
      v.budget_exceeded = e.code() == ErrorCode::BudgetExceeded || budget_exceeded;
      v.checklist.push_back(std::string("deficiency one algorithm stopped: ") + e.what());
      return v;
    }
  } else {
    MssVerdict v;
    v.budget_exceeded = budget_exceeded;
    v.checklist.push_back(open ? "no known atom found" : "network is not fully open");
    v.checklist.push_back("deficiency one algorithm not applicable: " + *why);
    if (budget_exceeded) v.checklist.push_back("containment search budget exceeded");
    return v;
  }
}

}  // namespace crnmss
