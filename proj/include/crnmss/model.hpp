#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crnmss/error.hpp"

namespace crnmss {

/// Nonnegative integer combination of species, indexed by the owning
/// network's species order. The all-zero vector is the complex "0".
struct Complex {
  std::vector<int> coeffs;

  Complex() = default;
  explicit Complex(std::vector<int> c) : coeffs(std::move(c)) {}

  [[nodiscard]] std::size_t size() const { return coeffs.size(); }
  [[nodiscard]] int operator[](std::size_t i) const { return coeffs[i]; }

  [[nodiscard]] int molecularity() const {
    int m = 0;
    for (int c : coeffs) m += c;
    return m;
  }
  [[nodiscard]] bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
  }
  /// Unimolecular complex X_i: returns i.
  [[nodiscard]] std::optional<std::size_t> single_species() const {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      if (coeffs[i] != 1 || found) return std::nullopt;
      found = i;
    }
    return found;
  }

  friend auto operator<=>(const Complex&, const Complex&) = default;
  friend bool operator==(const Complex&, const Complex&) = default;
};

inline Complex zero_complex(std::size_t species) { return Complex(std::vector<int>(species, 0)); }

inline Complex unit_complex(std::size_t species, std::size_t i) {
  Complex c = zero_complex(species);
  c.coeffs[i] = 1;
  return c;
}

struct Reaction {
  Complex reactant;
  Complex product;

  [[nodiscard]] Reaction reversed() const { return {product, reactant}; }

  friend auto operator<=>(const Reaction&, const Reaction&) = default;
  friend bool operator==(const Reaction&, const Reaction&) = default;
};

/// Product minus reactant, componentwise.
inline std::vector<int> reaction_vector(const Reaction& r) {
  std::vector<int> v(r.reactant.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = r.product[i] - r.reactant[i];
  return v;
}

/// Inflow 0 -> X_i or outflow X_i -> 0.
inline bool is_flow_reaction(const Reaction& r) {
  return (r.reactant.is_zero() && r.product.single_species()) ||
         (r.product.is_zero() && r.reactant.single_species());
}

inline bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  const auto first = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(first) || name.front() == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || ch == '_';
  });
}

/// Validated chemical reaction network. Immutable once built: species order
/// is fixed, reactions are deduplicated and sorted (reactant, then product,
/// lexicographic on coefficient vectors), complexes are deduplicated and
/// sorted the same way.
class Network {
 public:
  Network() = default;

  [[nodiscard]] const std::vector<std::string>& species() const { return species_; }
  [[nodiscard]] const std::vector<Reaction>& reactions() const { return reactions_; }
  [[nodiscard]] const std::vector<Complex>& complexes() const { return complexes_; }
  [[nodiscard]] std::size_t species_count() const { return species_.size(); }

  [[nodiscard]] std::optional<std::size_t> species_index(std::string_view name) const {
    for (std::size_t i = 0; i < species_.size(); ++i)
      if (species_[i] == name) return i;
    return std::nullopt;
  }

  [[nodiscard]] std::optional<std::size_t> complex_index(const Complex& c) const {
    auto it = std::lower_bound(complexes_.begin(), complexes_.end(), c);
    if (it == complexes_.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - complexes_.begin());
  }

  [[nodiscard]] std::optional<std::size_t> reaction_index(const Reaction& r) const {
    auto it = std::lower_bound(reactions_.begin(), reactions_.end(), r);
    if (it == reactions_.end() || *it != r) return std::nullopt;
    return static_cast<std::size_t>(it - reactions_.begin());
  }

  [[nodiscard]] bool contains(const Reaction& r) const { return reaction_index(r).has_value(); }

  /// Both directions present.
  [[nodiscard]] bool is_reversible(const Reaction& r) const {
    return contains(r) && contains(r.reversed());
  }

  [[nodiscard]] bool all_reversible() const {
    return std::all_of(reactions_.begin(), reactions_.end(),
                       [this](const Reaction& r) { return contains(r.reversed()); });
  }

  /// Reactant and product complex indices of reaction i.
  [[nodiscard]] std::pair<std::size_t, std::size_t> edge(std::size_t i) const {
    return {*complex_index(reactions_[i].reactant), *complex_index(reactions_[i].product)};
  }

  friend bool operator==(const Network&, const Network&) = default;

  friend Network build_network(std::vector<std::string> species, std::vector<Reaction> reactions);

 private:
  std::vector<std::string> species_;
  std::vector<Reaction> reactions_;
  std::vector<Complex> complexes_;
};

/// Validates and canonicalizes a network.
/// Throws Error with DuplicateSpecies, InvalidSpeciesName, DimensionMismatch,
/// TrivialReaction, OrphanSpecies or EmptyNetwork.
inline Network build_network(std::vector<std::string> species, std::vector<Reaction> reactions) {
  {
    std::set<std::string> seen;
    for (const auto& name : species) {
      if (!is_identifier(name)) throw Error(ErrorCode::InvalidSpeciesName, "'" + name + "'");
      if (!seen.insert(name).second) throw Error(ErrorCode::DuplicateSpecies, name);
    }
  }
  if (reactions.empty()) throw Error(ErrorCode::EmptyNetwork, "no reactions");
  for (const auto& r : reactions) {
    if (r.reactant.size() != species.size() || r.product.size() != species.size())
      throw Error(ErrorCode::DimensionMismatch, "complex length differs from species count");
    for (std::size_t i = 0; i < species.size(); ++i)
      if (r.reactant[i] < 0 || r.product[i] < 0)
        throw Error(ErrorCode::DimensionMismatch, "negative stoichiometric coefficient");
    if (r.reactant == r.product) throw Error(ErrorCode::TrivialReaction, "reactant equals product");
  }
  std::sort(reactions.begin(), reactions.end());
  reactions.erase(std::unique(reactions.begin(), reactions.end()), reactions.end());

  std::vector<Complex> complexes;
  complexes.reserve(2 * reactions.size());
  for (const auto& r : reactions) {
    complexes.push_back(r.reactant);
    complexes.push_back(r.product);
  }
  std::sort(complexes.begin(), complexes.end());
  complexes.erase(std::unique(complexes.begin(), complexes.end()), complexes.end());

  for (std::size_t i = 0; i < species.size(); ++i) {
    const bool present = std::any_of(complexes.begin(), complexes.end(),
                                     [i](const Complex& c) { return c[i] != 0; });
    if (!present) throw Error(ErrorCode::OrphanSpecies, species[i]);
  }

  Network n;
  n.species_ = std::move(species);
  n.reactions_ = std::move(reactions);
  n.complexes_ = std::move(complexes);
  return n;
}

inline bool is_fully_open(const Network& n) {
  const std::size_t s = n.species_count();
  for (std::size_t i = 0; i < s; ++i) {
    const Reaction in{zero_complex(s), unit_complex(s, i)};
    if (!n.contains(in) || !n.contains(in.reversed())) return false;
  }
  return true;
}

/// Adds 0 -> X_i and X_i -> 0 for every species. Idempotent.
inline Network fully_open_closure(const Network& n) {
  if (is_fully_open(n)) return n;
  const std::size_t s = n.species_count();
  std::vector<Reaction> reactions = n.reactions();
  for (std::size_t i = 0; i < s; ++i) {
    reactions.push_back({zero_complex(s), unit_complex(s, i)});
    reactions.push_back({unit_complex(s, i), zero_complex(s)});
  }
  return build_network(n.species(), std::move(reactions));
}

inline std::vector<std::size_t> non_flow_reaction_indices(const Network& n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n.reactions().size(); ++i)
    if (!is_flow_reaction(n.reactions()[i])) out.push_back(i);
  return out;
}

/// "2 A + B", "0".
inline std::string format_complex(const Complex& c, const std::vector<std::string>& species) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!first) out << " + ";
    if (c[i] != 1) out << c[i] << ' ';
    out << species[i];
    first = false;
  }
  if (first) out << '0';
  return out.str();
}

inline std::string format_reaction(const Reaction& r, const std::vector<std::string>& species,
                                   std::string_view arrow = "->") {
  return format_complex(r.reactant, species) + " " + std::string(arrow) + " " +
         format_complex(r.product, species);
}

}  // namespace crnmss
