#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crnmss/model.hpp"
#include "crnmss/rational.hpp"

namespace crnmss {

enum class Outcome { Mss, NoMss, Inconclusive };

enum class Provenance {
  DefZeroThm,
  DefOneThm,
  OneReactionCriterion,
  DefOneAlgorithm,
  EmbeddedAtom,
  UserAtom,
  None
};

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Mss: return "MSS";
    case Outcome::NoMss: return "NoMSS";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::DefZeroThm: return "DefZeroThm";
    case Provenance::DefOneThm: return "DefOneThm";
    case Provenance::OneReactionCriterion: return "OneReactionCriterion";
    case Provenance::DefOneAlgorithm: return "DefOneAlgorithm";
    case Provenance::EmbeddedAtom: return "EmbeddedAtom";
    case Provenance::UserAtom: return "UserAtom";
    case Provenance::None: return "None";
  }
  return "?";
}

/// SingleSpecies(a1, a2):  a1 X -> a2 X with a2 > a1 > 1.
/// TwoSpecies(b1, b2):     X + Y -> b1 X + b2 Y with b1, b2 > 1.
struct AtomForm {
  enum class Kind { SingleSpecies, TwoSpecies };
  Kind kind = Kind::SingleSpecies;
  int first = 0;
  int second = 0;

  friend bool operator==(const AtomForm&, const AtomForm&) = default;
};

inline std::string atom_form_name(const AtomForm& f) {
  return std::string(f.kind == AtomForm::Kind::SingleSpecies ? "SingleSpecies(" : "TwoSpecies(") +
         std::to_string(f.first) + "," + std::to_string(f.second) + ")";
}

struct AtomWitness {
  Reaction reaction;                  // host reaction
  std::size_t reaction_index = 0;     // index in the host network
  std::vector<std::size_t> species;   // retained host species (1 or 2)
  AtomForm form;

  friend bool operator==(const AtomWitness&, const AtomWitness&) = default;
};

/// How an atom core sits inside a host network.
struct Embedding {
  std::string atom_name;
  std::vector<std::size_t> kept_reactions;     // host reaction indices
  std::vector<std::size_t> dropped_reactions;  // non-flow host reactions removed
  std::vector<std::size_t> kept_species;       // host species indices, in atom species order
  std::vector<std::size_t> dropped_species;    // species of kept reactions that were removed

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct MssVerdict {
  Outcome outcome = Outcome::Inconclusive;
  Provenance provenance = Provenance::None;
  std::vector<AtomWitness> atoms;
  std::optional<Embedding> embedding;
  std::optional<RationalVector> mu;
  std::vector<std::string> checklist;  // hypotheses that fired, or the reason for Inconclusive
  bool budget_exceeded = false;
};

}  // namespace crnmss
