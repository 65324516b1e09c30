#pragma once

// Deficiency One Algorithm for regular deficiency-one networks whose linkage
// classes all have deficiency zero.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crnmss/error.hpp"
#include "crnmss/fourier_motzkin.hpp"
#include "crnmss/linalg.hpp"
#include "crnmss/model.hpp"
#include "crnmss/structure.hpp"
#include "crnmss/verdict.hpp"

namespace crnmss {

/// Names the first failing hypothesis, or nullopt if all hold.
inline std::optional<std::string> algorithm_hypothesis_failure(const Network& n,
                                                               const LinkageStructure& ls) {
  const auto def = deficiency_report(n, ls);
  if (def.delta != 1) return "deficiency is " + std::to_string(def.delta) + ", not 1";
  if (def.l < 2) return "fewer than two linkage classes";
  for (std::size_t j = 0; j < def.per_linkage.size(); ++j)
    if (def.per_linkage[j] != 0)
      return "linkage class " + std::to_string(j) + " has deficiency " +
             std::to_string(def.per_linkage[j]);
  const auto reg = regularity_report(n, ls);
  if (!reg.positively_dependent) return "not regular: reaction vectors not positively dependent";
  if (!reg.one_terminal_per_linkage)
    return "not regular: a linkage class has more than one terminal strong linkage class";
  if (!reg.cut_pair_disconnects)
    return "not regular: removing an adjacent terminal pair does not disconnect its linkage class";
  return std::nullopt;
}

inline void require_algorithm_hypotheses(const Network& n, const LinkageStructure& ls) {
  if (auto why = algorithm_hypothesis_failure(n, ls))
    throw Error(ErrorCode::HypothesesFailed, *why);
}

struct GVector {
  RationalVector g;  // indexed by complex
};

/// Step 1: the kernel vector of the stacked constraints, oriented so every
/// terminal strong class sums to a nonnegative number.
inline GVector compute_g(const Network& n, const LinkageStructure& ls) {
  require_algorithm_hypotheses(n, ls);
  const std::size_t c = n.complexes().size();
  const std::size_t s = n.species_count();
  linalg::Matrix rows;
  for (std::size_t i = 0; i < s; ++i) {
    RationalVector row(c);
    for (std::size_t k = 0; k < c; ++k) row[k] = n.complexes()[k][i];
    rows.push_back(std::move(row));
  }
  for (const auto& cls : ls.linkage_classes) {
    RationalVector row(c, Rational(0));
    for (auto k : cls) row[k] = 1;
    rows.push_back(std::move(row));
  }
  auto kernel = linalg::nullspace(rows, c);
  if (kernel.size() != 1)
    throw Error(ErrorCode::KernelDimensionUnexpected,
                "kernel has dimension " + std::to_string(kernel.size()));
  RationalVector g = primitive_integer(kernel.front());

  auto terminal_ok = [&](const RationalVector& v) {
    for (auto t : ls.terminal_classes) {
      Rational sum = 0;
      for (auto k : ls.strong_classes[t]) sum += v[k];
      if (sum < 0) return false;
    }
    return true;
  };
  RationalVector neg = g;
  for (auto& v : neg) v = -v;
  const bool pos_ok = terminal_ok(g), neg_ok = terminal_ok(neg);
  if (!pos_ok && !neg_ok) throw Error(ErrorCode::NoOrientation, "neither sign of g satisfies Step 1c");
  if (pos_ok && neg_ok) {
    auto first = std::find_if(g.begin(), g.end(), [](const Rational& v) { return v != 0; });
    if (*first < 0) g = neg;
  } else if (neg_ok) {
    g = neg;
  }
  return GVector{g};
}

inline GVector compute_g(const Network& n) { return compute_g(n, linkage_structure(n)); }

/// Step 2 result: sign of (y_p - y_q).mu for an adjacent terminal pair.
struct CutPairRelation {
  std::size_t p = 0;
  std::size_t q = 0;
  int sign = 0;
};

inline std::vector<CutPairRelation> cut_pair_relations(const Network& n, const LinkageStructure& ls,
                                                       const GVector& g) {
  std::vector<CutPairRelation> out;
  const std::size_t c = n.complexes().size();
  for (auto [p, q] : terminal_adjacent_pairs(n, ls)) {
    detail::UnionFind uf(c);
    for (auto [a, b] : edges_without_pair(n, p, q)) uf.unite(a, b);
    if (uf.find(p) == uf.find(q))
      throw Error(ErrorCode::NoDisconnect, "pair " + std::to_string(p) + "," + std::to_string(q));
    Rational sum = 0;
    for (std::size_t k = 0; k < c; ++k)
      if (uf.find(k) == uf.find(p)) sum += g.g[k];
    out.push_back({p, q, sign(sum)});
  }
  return out;
}

enum class Block { M, L, U };

inline const char* block_name(Block b) {
  switch (b) {
    case Block::M: return "M";
    case Block::L: return "L";
    case Block::U: return "U";
  }
  return "?";
}

/// Step 3: an assignment of reactant complexes to U, M, L.
struct Partition {
  std::vector<std::size_t> terminal;   // strong-class indices of terminal classes with reactants
  std::vector<Block> assignment;       // block per entry of `terminal`
  ComplexSet U, M, L;
};

struct PartitionOptions {
  bool drop_swapped = true;   // reduction (i)
  bool require_u_and_l = true;  // reduction (ii), applied only when it is valid
};

inline std::vector<Partition> enumerate_partitions(const Network& n, const LinkageStructure& ls,
                                                   const PartitionOptions& opt = {}) {
  const std::size_t c = n.complexes().size();
  std::vector<bool> reactant(c, false);
  for (std::size_t r = 0; r < n.reactions().size(); ++r) reactant[n.edge(r).first] = true;

  std::vector<std::size_t> terminal;
  bool all_terminal_large = true;
  for (auto t : ls.terminal_classes) {
    bool has_reactant = false;
    for (auto k : ls.strong_classes[t]) has_reactant = has_reactant || reactant[k];
    if (has_reactant) terminal.push_back(t);
    if (ls.strong_classes[t].size() < 2) all_terminal_large = false;
  }
  std::sort(terminal.begin(), terminal.end());
  if (terminal.size() > 12)
    throw Error(ErrorCode::BudgetExceeded, "more than 12 terminal strong linkage classes");

  ComplexSet base_m;
  for (std::size_t k = 0; k < c; ++k)
    if (reactant[k] && !ls.is_terminal(ls.strong_of[k])) base_m.push_back(k);

  std::size_t total = 1;
  for (std::size_t i = 0; i < terminal.size(); ++i) total *= 3;

  std::vector<Partition> out;
  for (std::size_t code = 0; code < total; ++code) {
    Partition p;
    p.terminal = terminal;
    p.assignment.resize(terminal.size());
    std::size_t rest = code;
    for (std::size_t i = terminal.size(); i-- > 0;) {
      p.assignment[i] = static_cast<Block>(rest % 3);
      rest /= 3;
    }
    if (opt.drop_swapped) {
      auto first = std::find_if(p.assignment.begin(), p.assignment.end(),
                                [](Block b) { return b != Block::M; });
      if (first != p.assignment.end() && *first == Block::U) continue;
    }
    const bool has_u = std::count(p.assignment.begin(), p.assignment.end(), Block::U) > 0;
    const bool has_l = std::count(p.assignment.begin(), p.assignment.end(), Block::L) > 0;
    if (opt.require_u_and_l && all_terminal_large && (!has_u || !has_l)) continue;

    p.M = base_m;
    for (std::size_t i = 0; i < terminal.size(); ++i) {
      ComplexSet& dest = p.assignment[i] == Block::U ? p.U : p.assignment[i] == Block::L ? p.L : p.M;
      for (auto k : ls.strong_classes[terminal[i]])
        if (reactant[k]) dest.push_back(k);
    }
    std::sort(p.U.begin(), p.U.end());
    std::sort(p.M.begin(), p.M.end());
    std::sort(p.L.begin(), p.L.end());
    out.push_back(std::move(p));
  }
  return out;
}

enum class RelOp { Greater, Equal, Less };

inline const char* relop_symbol(RelOp op) {
  switch (op) {
    case RelOp::Greater: return ">";
    case RelOp::Equal: return "=";
    case RelOp::Less: return "<";
  }
  return "?";
}

/// (y_lhs - y_rhs).mu op 0.
struct LinearRelation {
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  RelOp op = RelOp::Greater;
  int step = 0;
  RationalVector coeffs;
};

struct InequalitySystem {
  std::vector<LinearRelation> relations;
  std::size_t dimension = 0;
};

inline RelOp op_from_sign(int s) { return s > 0 ? RelOp::Greater : s < 0 ? RelOp::Less : RelOp::Equal; }

inline RelOp reversed(RelOp op) {
  return op == RelOp::Greater ? RelOp::Less : op == RelOp::Less ? RelOp::Greater : RelOp::Equal;
}

/// Steps 4-7.
inline InequalitySystem build_inequality_system(const Network& n, const LinkageStructure& ls,
                                                const std::vector<CutPairRelation>& cuts,
                                                const Partition& p) {
  InequalitySystem sys;
  sys.dimension = n.species_count();
  auto add = [&](std::size_t a, std::size_t b, RelOp op, int step) {
    LinearRelation rel{a, b, op, step, RationalVector(sys.dimension)};
    for (std::size_t i = 0; i < sys.dimension; ++i)
      rel.coeffs[i] = n.complexes()[a][i] - n.complexes()[b][i];
    sys.relations.push_back(std::move(rel));
  };
  for (std::size_t i = 0; i < p.M.size(); ++i)
    for (std::size_t j = i + 1; j < p.M.size(); ++j) add(p.M[i], p.M[j], RelOp::Equal, 4);
  for (auto u : p.U)
    for (auto m : p.M) add(u, m, RelOp::Greater, 5);
  for (auto m : p.M)
    for (auto l : p.L) add(m, l, RelOp::Greater, 5);
  for (auto u : p.U)
    for (auto l : p.L) add(u, l, RelOp::Greater, 5);
  for (const auto& cut : cuts) {
    const auto cls = ls.strong_of[cut.p];
    const auto it = std::find(p.terminal.begin(), p.terminal.end(), cls);
    if (it == p.terminal.end()) continue;
    const Block b = p.assignment[static_cast<std::size_t>(it - p.terminal.begin())];
    if (b == Block::U) add(cut.p, cut.q, op_from_sign(cut.sign), 6);
    if (b == Block::L) add(cut.p, cut.q, reversed(op_from_sign(cut.sign)), 6);
  }
  return sys;
}

inline bool satisfies(const InequalitySystem& sys, const RationalVector& mu) {
  for (const auto& rel : sys.relations) {
    const Rational v = dot(rel.coeffs, mu);
    if (rel.op == RelOp::Greater && !(v > 0)) return false;
    if (rel.op == RelOp::Less && !(v < 0)) return false;
    if (rel.op == RelOp::Equal && v != 0) return false;
  }
  return true;
}

enum class SolveStatus { Infeasible, Solved, FeasibleIncompatible };

inline const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Solved: return "solved";
    case SolveStatus::FeasibleIncompatible: return "feasible-not-sign-compatible";
  }
  return "?";
}

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<RationalVector> mu;  // set for Solved and FeasibleIncompatible
};

/// Step 8: a nonzero mu satisfying the system, then sign compatibility.
inline SolveResult solve_system(const InequalitySystem& sys, const SubspaceBasis& basis) {
  std::optional<RationalVector> mu;
  const bool any_strict = std::any_of(sys.relations.begin(), sys.relations.end(),
                                      [](const LinearRelation& r) { return r.op != RelOp::Equal; });
  if (any_strict) {
    std::vector<fm::Constraint> cons;
    for (const auto& rel : sys.relations) {
      fm::Constraint k;
      k.a = rel.coeffs;
      k.c = 0;
      if (rel.op == RelOp::Less)
        for (auto& v : k.a) v = -v;
      k.kind = rel.op == RelOp::Equal ? fm::Kind::Equal : fm::Kind::Strict;
      cons.push_back(std::move(k));
    }
    mu = fm::solve(std::move(cons), sys.dimension);
  } else {
    linalg::Matrix rows;
    for (const auto& rel : sys.relations) rows.push_back(rel.coeffs);
    auto kernel = linalg::nullspace(rows, sys.dimension);
    // Prefer a kernel vector that is sign compatible.
    for (const auto& v : kernel) {
      if (sign_compatible(v, basis)) {
        mu = v;
        break;
      }
    }
    if (!mu && !kernel.empty()) mu = kernel.front();
  }
  SolveResult res;
  if (!mu) return res;
  *mu = primitive_integer(std::move(*mu));
  if (std::all_of(mu->begin(), mu->end(), [](const Rational& v) { return v == 0; })) return res;
  if (!satisfies(sys, *mu)) throw Error(ErrorCode::HypothesesFailed, "internal: solution check failed");
  res.mu = mu;
  res.status = sign_compatible(*mu, basis) ? SolveStatus::Solved : SolveStatus::FeasibleIncompatible;
  return res;
}

/// Closed-form solution of the one-reaction system
///   sum a_i mu_i > max_j mu_j > 0,  sign(mu_i) = sign(b_i - a_i).
inline std::optional<RationalVector> one_reaction_inequality(const std::vector<int>& a,
                                                             const std::vector<int>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "a and b differ in length");
  long up = 0, down = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] > a[i]) up += a[i];
    if (b[i] < a[i]) down += a[i];
  }
  if (up <= 1) return std::nullopt;
  const Rational eps = make_rational(1, 2 * (down + 1));
  RationalVector mu(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] > a[i]) mu[i] = 1;
    if (b[i] < a[i]) mu[i] = -eps;
  }
  Rational lhs = 0, mx = mu.empty() ? Rational(0) : mu[0];
  for (std::size_t i = 0; i < a.size(); ++i) {
    lhs += a[i] * mu[i];
    mx = std::max(mx, mu[i]);
    if (sign(mu[i]) != (b[i] > a[i] ? 1 : b[i] < a[i] ? -1 : 0))
      throw Error(ErrorCode::HypothesesFailed, "internal: sign pattern violated");
  }
  if (!(lhs > mx && mx > 0)) throw Error(ErrorCode::HypothesesFailed, "internal: inequality violated");
  return mu;
}

struct PartitionRecord {
  Partition partition;
  InequalitySystem system;
  SolveResult result;
};

struct AlgorithmPass {
  int orientation = 1;  // +1 for g, -1 for -g
  GVector g;
  std::vector<CutPairRelation> cuts;
  std::vector<PartitionRecord> partitions;
};

struct AlgorithmTrace {
  std::vector<AlgorithmPass> passes;
};

/// Full algorithm. One pass if some reaction is irreversible, otherwise a
/// second pass with -g. Stops at the first solving partition.
inline MssVerdict run_algorithm(const Network& n, AlgorithmTrace* trace = nullptr,
                                const PartitionOptions& opt = {}) {
  const auto ls = linkage_structure(n);
  const GVector g = compute_g(n, ls);
  const auto basis = stoich_subspace(n);
  const auto partitions = enumerate_partitions(n, ls, opt);

  std::vector<int> orientations{1};
  if (n.all_reversible()) orientations.push_back(-1);

  MssVerdict v;
  v.provenance = Provenance::DefOneAlgorithm;
  bool incompatible = false;
  for (int orient : orientations) {
    AlgorithmPass pass;
    pass.orientation = orient;
    pass.g = g;
    if (orient < 0)
      for (auto& x : pass.g.g) x = -x;
    pass.cuts = cut_pair_relations(n, ls, pass.g);
    for (const auto& p : partitions) {
      PartitionRecord rec{p, build_inequality_system(n, ls, pass.cuts, p), {}};
      rec.result = solve_system(rec.system, basis);
      const auto status = rec.result.status;
      if (status == SolveStatus::FeasibleIncompatible) incompatible = true;
      if (trace || status == SolveStatus::Solved) pass.partitions.push_back(rec);
      if (status == SolveStatus::Solved) {
        v.outcome = Outcome::Mss;
        v.mu = rec.result.mu;
        v.checklist.push_back("solving partition found in pass with " +
                              std::string(orient > 0 ? "g" : "-g"));
        if (trace) trace->passes.push_back(std::move(pass));
        return v;
      }
    }
    if (trace) trace->passes.push_back(std::move(pass));
  }
  if (incompatible) {
    v.outcome = Outcome::Inconclusive;
    v.checklist.push_back("a partition was feasible but its solution is not sign compatible");
  } else {
    v.outcome = Outcome::NoMss;
    v.checklist = {"regular", "deficiency one", "two or more linkage classes",
                   "every linkage class has deficiency zero",
                   std::string("all partitions infeasible in ") +
                       (orientations.size() == 2 ? "both sign passes" : "the single pass")};
  }
  return v;
}

}  // namespace crnmss
