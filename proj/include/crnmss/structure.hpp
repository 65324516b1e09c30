#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crnmss/linalg.hpp"
#include "crnmss/lp.hpp"
#include "crnmss/model.hpp"
#include "crnmss/rational.hpp"

namespace crnmss {

using ComplexSet = std::vector<std::size_t>;  // sorted complex indices

struct LinkageStructure {
  std::vector<ComplexSet> linkage_classes;   // ordered by smallest member
  std::vector<ComplexSet> strong_classes;    // ordered by smallest member
  std::vector<std::size_t> terminal_classes; // indices into strong_classes
  std::vector<std::size_t> linkage_of;       // complex -> linkage class
  std::vector<std::size_t> strong_of;        // complex -> strong class

  [[nodiscard]] bool is_terminal(std::size_t strong) const {
    return std::find(terminal_classes.begin(), terminal_classes.end(), strong) !=
           terminal_classes.end();
  }
};

struct SubspaceBasis {
  std::vector<RationalVector> basis;
  std::size_t dimension = 0;
  std::size_t ambient = 0;
};

struct DeficiencyReport {
  std::size_t n = 0;
  std::size_t l = 0;
  std::size_t d = 0;
  long delta = 0;
  std::vector<long> per_linkage;

  [[nodiscard]] long per_linkage_sum() const {
    return std::accumulate(per_linkage.begin(), per_linkage.end(), 0L);
  }
};

struct RegularityReport {
  bool positively_dependent = false;
  std::optional<RationalVector> alpha;  // per reaction, every entry >= 1
  bool one_terminal_per_linkage = false;
  bool cut_pair_disconnects = false;
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;  // complex indices
  bool regular = false;
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// Groups vertices by label into sets ordered by smallest member.
inline std::vector<ComplexSet> group_by(const std::vector<std::size_t>& label, std::size_t n,
                                        std::vector<std::size_t>& index_of) {
  std::vector<ComplexSet> out;
  std::vector<std::size_t> slot(n, n);
  index_of.assign(label.size(), 0);
  for (std::size_t v = 0; v < label.size(); ++v) {
    if (slot[label[v]] == n) {
      slot[label[v]] = out.size();
      out.emplace_back();
    }
    out[slot[label[v]]].push_back(v);
    index_of[v] = slot[label[v]];
  }
  return out;
}

/// Connected components of the undirected graph on n vertices.
inline std::size_t component_count(std::size_t n,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  UnionFind uf(n);
  for (auto [a, b] : edges) uf.unite(a, b);
  std::size_t count = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (uf.find(v) == v) ++count;
  return count;
}

/// Tarjan's strongly connected components; returns a component label per vertex.
inline std::vector<std::size_t> scc_labels(std::size_t n,
                                           const std::vector<std::vector<std::size_t>>& adj) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), label(n, unset), stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0, components = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : adj[v]) {
      if (index[w] == unset) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        label[w] = components;
      } while (w != v);
      ++components;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == unset) visit(v);
  return label;
}

inline std::vector<std::pair<std::size_t, std::size_t>> edges_of(const Network& n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(n.reactions().size());
  for (std::size_t i = 0; i < n.reactions().size(); ++i) edges.push_back(n.edge(i));
  return edges;
}

}  // namespace detail

inline LinkageStructure linkage_structure(const Network& n) {
  const std::size_t c = n.complexes().size();
  const auto edges = detail::edges_of(n);

  LinkageStructure out;
  detail::UnionFind uf(c);
  for (auto [a, b] : edges) uf.unite(a, b);
  std::vector<std::size_t> root(c);
  for (std::size_t v = 0; v < c; ++v) root[v] = uf.find(v);
  out.linkage_classes = detail::group_by(root, c, out.linkage_of);

  std::vector<std::vector<std::size_t>> adj(c);
  for (auto [a, b] : edges) adj[a].push_back(b);
  const auto labels = detail::scc_labels(c, adj);
  out.strong_classes = detail::group_by(labels, c, out.strong_of);

  for (std::size_t k = 0; k < out.strong_classes.size(); ++k) {
    bool leaves = false;
    for (auto v : out.strong_classes[k])
      for (auto w : adj[v])
        if (out.strong_of[w] != k) leaves = true;
    if (!leaves) out.terminal_classes.push_back(k);
  }
  return out;
}

inline linalg::Matrix reaction_vectors(const Network& n) {
  linalg::Matrix m;
  for (const auto& r : n.reactions()) {
    RationalVector row;
    for (int v : reaction_vector(r)) row.emplace_back(v);
    m.push_back(std::move(row));
  }
  return m;
}

inline SubspaceBasis stoich_subspace(const Network& n) {
  const auto e = linalg::rref(reaction_vectors(n), n.species_count());
  SubspaceBasis b;
  b.basis = e.rows;
  b.dimension = e.rows.size();
  b.ambient = n.species_count();
  return b;
}

inline DeficiencyReport deficiency_report(const Network& n, const LinkageStructure& ls) {
  DeficiencyReport rep;
  rep.n = n.complexes().size();
  rep.l = ls.linkage_classes.size();
  rep.d = stoich_subspace(n).dimension;
  rep.delta = static_cast<long>(rep.n) - static_cast<long>(rep.l) - static_cast<long>(rep.d);
  const auto all = reaction_vectors(n);
  for (std::size_t j = 0; j < ls.linkage_classes.size(); ++j) {
    linalg::Matrix rows;
    for (std::size_t r = 0; r < n.reactions().size(); ++r)
      if (ls.linkage_of[n.edge(r).first] == j) rows.push_back(all[r]);
    const auto rank = linalg::rank(rows, n.species_count());
    rep.per_linkage.push_back(static_cast<long>(ls.linkage_classes[j].size()) - 1 -
                              static_cast<long>(rank));
  }
  return rep;
}

inline DeficiencyReport deficiency_report(const Network& n) {
  return deficiency_report(n, linkage_structure(n));
}

/// Searches for alpha >= 1 with sum alpha_r v_r = 0.
inline std::optional<RationalVector> positive_dependence(const Network& n) {
  const std::size_t r = n.reactions().size();
  const std::size_t s = n.species_count();
  const auto vecs = reaction_vectors(n);
  lp::Problem p(r);
  for (std::size_t i = 0; i < s; ++i) {
    RationalVector row(r);
    for (std::size_t k = 0; k < r; ++k) row[k] = vecs[k][i];
    p.add(std::move(row), lp::Sense::Equal, 0);
  }
  for (std::size_t k = 0; k < r; ++k) {
    RationalVector row(r, Rational(0));
    row[k] = 1;
    p.add(std::move(row), lp::Sense::GreaterEqual, 1);
  }
  return lp::find_feasible_point(p);
}

/// Adjacent pairs (p < q) inside terminal strong classes of size >= 2.
inline std::vector<std::pair<std::size_t, std::size_t>> terminal_adjacent_pairs(
    const Network& n, const LinkageStructure& ls) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t r = 0; r < n.reactions().size(); ++r) {
    auto [a, b] = n.edge(r);
    const auto k = ls.strong_of[a];
    if (ls.strong_of[b] != k || !ls.is_terminal(k) || ls.strong_classes[k].size() < 2) continue;
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

/// Reaction edges with those between p and q removed; all complexes stay as vertices.
inline std::vector<std::pair<std::size_t, std::size_t>> edges_without_pair(const Network& n,
                                                                           std::size_t p,
                                                                           std::size_t q) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto e : detail::edges_of(n)) {
    if ((e.first == p && e.second == q) || (e.first == q && e.second == p)) continue;
    out.push_back(e);
  }
  return out;
}

inline RegularityReport regularity_report(const Network& n, const LinkageStructure& ls) {
  RegularityReport rep;
  rep.alpha = positive_dependence(n);
  rep.positively_dependent = rep.alpha.has_value();

  rep.one_terminal_per_linkage = true;
  std::vector<int> terminals(ls.linkage_classes.size(), 0);
  for (auto t : ls.terminal_classes) ++terminals[ls.linkage_of[ls.strong_classes[t].front()]];
  for (int t : terminals)
    if (t != 1) rep.one_terminal_per_linkage = false;

  rep.cut_pair_disconnects = true;
  const std::size_t c = n.complexes().size();
  for (auto [p, q] : terminal_adjacent_pairs(n, ls)) {
    if (detail::component_count(c, edges_without_pair(n, p, q)) <= ls.linkage_classes.size()) {
      rep.cut_pair_disconnects = false;
      rep.failing_pair = std::make_pair(p, q);
      break;
    }
  }
  rep.regular = rep.positively_dependent && rep.one_terminal_per_linkage && rep.cut_pair_disconnects;
  return rep;
}

inline RegularityReport regularity_report(const Network& n) {
  return regularity_report(n, linkage_structure(n));
}

/// True iff some lambda in span(basis) has sign(lambda) = sign(mu) componentwise.
inline bool sign_compatible(const RationalVector& mu, const SubspaceBasis& b) {
  if (mu.size() != b.ambient)
    throw Error(ErrorCode::DimensionMismatch, "mu length differs from species count");
  const bool zero = std::all_of(mu.begin(), mu.end(), [](const Rational& v) { return v == 0; });
  if (zero || b.dimension == b.ambient) return true;
  if (b.dimension == 0) return false;

  lp::Problem p(b.dimension);
  p.free.assign(b.dimension, true);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    RationalVector row(b.dimension);
    for (std::size_t j = 0; j < b.dimension; ++j) row[j] = b.basis[j][i];
    const int sg = sign(mu[i]);
    if (sg == 0) p.add(std::move(row), lp::Sense::Equal, 0);
    else if (sg > 0) p.add(std::move(row), lp::Sense::GreaterEqual, 1);
    else p.add(std::move(row), lp::Sense::LessEqual, -1);
  }
  return lp::find_feasible_point(p).has_value();
}

}  // namespace crnmss
