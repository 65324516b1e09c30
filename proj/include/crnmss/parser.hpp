#pragma once

// Reaction-network text format.
//
//   document  := line*
//   line      := directive | reaction | comment | blank
//   directive := "@fully_open" | "@rate" ident rational | "@species" ident+
//   reaction  := complex ("->" | "<->") complex rateclause?
//   rateclause:= "," "k" "=" rational ("," "k'" "=" rational)?
//   complex   := "0" | term ("+" term)*
//   term      := integer? ident          (both "2A" and "2 A")
//   rational  := integer ("/" integer)? | decimal literal
//   comment   := "#" any*
//
// "@rate k_X q" and "@rate l_X q" give the inflow (0 -> X) and outflow
// (X -> 0) rates of species X. "@species" pins the species order; it is only
// emitted by render_network when the reaction lines alone cannot reproduce
// the order.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crnmss/error.hpp"
#include "crnmss/model.hpp"
#include "crnmss/rational.hpp"

namespace crnmss {

struct NetworkDocument {
  Network network;
  bool fully_open = false;
  std::map<Reaction, Rational> rate_hints;

  friend bool operator==(const NetworkDocument&, const NetworkDocument&) = default;
};

namespace detail {

struct PendingReaction {
  std::vector<std::pair<std::string, int>> reactant;
  std::vector<std::pair<std::string, int>> product;
  std::optional<Rational> rate;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct PendingRate {
  bool inflow = true;
  std::string species;
  Rational value;
  std::size_t line = 0;
  std::size_t column = 0;
};

class LineScanner {
 public:
  LineScanner(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[nodiscard]] bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  [[nodiscard]] char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  [[nodiscard]] std::size_t column() const { return pos_ + 1; }
  [[nodiscard]] std::size_t line() const { return line_; }

  bool consume(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  /// Token of rational-literal characters.
  std::string number_token() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      const bool exp_sign = (ch == '+' || ch == '-') && pos_ > start &&
                            (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E');
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == '/' || ch == 'e' ||
          ch == 'E' || exp_sign || ((ch == '-' || ch == '+') && pos_ == start)) {
        ++pos_;
      } else {
        break;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(ErrorCode code, const std::string& message) const {
    throw ParseError(code, line_, column(), message);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline Rational parse_rate_value(LineScanner& sc) {
  const std::size_t col = sc.column();
  const std::string token = sc.number_token();
  auto value = parse_rational(token);
  if (!value) throw ParseError(ErrorCode::SyntaxError, sc.line(), col, "expected rational, got '" + token + "'");
  if (*value <= 0)
    throw ParseError(ErrorCode::ZeroRate, sc.line(), col, "rate must be positive, got " + token);
  return *value;
}

inline std::vector<std::pair<std::string, int>> parse_complex(LineScanner& sc) {
  std::vector<std::pair<std::string, int>> terms;
  sc.skip_ws();
  if (sc.peek() == '0') {
    // "0" alone is the zero complex; "0A" / "0 A" is a zero coefficient.
    const std::size_t col = sc.column();
    const std::string d = sc.digits();
    if (d == "0") {
      sc.skip_ws();
      const char next = sc.peek();
      if (!(std::isalpha(static_cast<unsigned char>(next)) || next == '_')) return terms;
    }
    throw ParseError(ErrorCode::SyntaxError, sc.line(), col, "zero or malformed coefficient");
  }
  while (true) {
    sc.skip_ws();
    const std::size_t col = sc.column();
    if (sc.peek() == '-') {
      sc.consume("-");
      if (std::isdigit(static_cast<unsigned char>(sc.peek())))
        throw ParseError(ErrorCode::NegativeCoefficient, sc.line(), col, "negative coefficient");
      throw ParseError(ErrorCode::SyntaxError, sc.line(), col, "expected species name");
    }
    int coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
      const std::string d = sc.digits();
      if (d.size() > 6) throw ParseError(ErrorCode::SyntaxError, sc.line(), col, "coefficient too large");
      coeff = std::stoi(d);
      if (coeff == 0) throw ParseError(ErrorCode::SyntaxError, sc.line(), col, "zero coefficient");
    }
    const std::size_t name_col = sc.column();
    const std::string name = sc.identifier();
    if (name.empty()) throw ParseError(ErrorCode::SyntaxError, sc.line(), name_col, "expected species name");
    terms.emplace_back(name, coeff);
    sc.skip_ws();
    if (sc.peek() != '+') break;
    sc.consume("+");
  }
  return terms;
}

inline std::string strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return std::string(hash == std::string_view::npos ? line : line.substr(0, hash));
}

}  // namespace detail

/// Parses the DSL. Species are indexed in first-appearance order; "<->"
/// expands to two directed reactions; "@fully_open" applies the closure after
/// all reaction lines. Throws ParseError.
inline NetworkDocument parse_network(std::string_view text) {
  std::vector<std::string> species;
  std::map<std::string, std::size_t> species_pos;
  auto note_species = [&](const std::string& name) {
    if (species_pos.emplace(name, species.size()).second) species.push_back(name);
  };
  std::vector<detail::PendingReaction> pending;
  std::vector<detail::PendingRate> pending_rates;
  bool fully_open = false;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string raw = detail::strip_comment(text.substr(start, end - start));
    start = end + 1;

    detail::LineScanner sc(raw, line_no);
    if (sc.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    if (sc.peek() == '@') {
      sc.consume("@");
      const std::size_t col = sc.column();
      const std::string name = sc.identifier();
      if (name == "fully_open") {
        fully_open = true;
      } else if (name == "rate") {
        const std::size_t target_col = sc.column() + 1;
        const std::string target = sc.identifier();
        if (target.size() < 3 || (target[0] != 'k' && target[0] != 'l') || target[1] != '_')
          throw ParseError(ErrorCode::SyntaxError, line_no, target_col,
                           "expected k_<species> or l_<species>");
        detail::PendingRate pr;
        pr.inflow = target[0] == 'k';
        pr.species = target.substr(2);
        pr.line = line_no;
        pr.column = target_col;
        pr.value = detail::parse_rate_value(sc);
        pending_rates.push_back(pr);
      } else if (name == "species") {
        bool any = false;
        while (!sc.at_end()) {
          const std::size_t c = sc.column();
          const std::string id = sc.identifier();
          if (id.empty()) sc.fail(ErrorCode::SyntaxError, "expected species name at column " + std::to_string(c));
          note_species(id);
          any = true;
        }
        if (!any) sc.fail(ErrorCode::SyntaxError, "@species needs at least one name");
      } else {
        throw ParseError(ErrorCode::UnknownDirective, line_no, col, "@" + name);
      }
      if (!sc.at_end()) sc.fail(ErrorCode::SyntaxError, "trailing characters after directive");
      if (end == text.size()) break;
      continue;
    }

    detail::PendingReaction fwd;
    fwd.line = line_no;
    fwd.column = sc.column();
    fwd.reactant = detail::parse_complex(sc);
    bool reversible = false;
    if (sc.consume("<->")) {
      reversible = true;
    } else if (!sc.consume("->")) {
      sc.fail(ErrorCode::SyntaxError, "expected '->' or '<->'");
    }
    fwd.product = detail::parse_complex(sc);
    std::optional<Rational> back_rate;
    if (sc.consume(",")) {
      if (!sc.consume("k") || !sc.consume("=")) sc.fail(ErrorCode::SyntaxError, "expected 'k='");
      fwd.rate = detail::parse_rate_value(sc);
      if (sc.consume(",")) {
        if (!reversible) sc.fail(ErrorCode::SyntaxError, "k' requires '<->'");
        if (!sc.consume("k'") || !sc.consume("=")) sc.fail(ErrorCode::SyntaxError, "expected \"k'=\"");
        back_rate = detail::parse_rate_value(sc);
      }
    }
    if (!sc.at_end()) sc.fail(ErrorCode::SyntaxError, "unexpected trailing characters");
    for (const auto& [n, c] : fwd.reactant) note_species(n);
    for (const auto& [n, c] : fwd.product) note_species(n);
    pending.push_back(fwd);
    if (reversible) {
      detail::PendingReaction back = fwd;
      std::swap(back.reactant, back.product);
      back.rate = back_rate;
      pending.push_back(back);
    }
    if (end == text.size()) break;
  }

  if (pending.empty()) throw ParseError(ErrorCode::SyntaxError, line_no, 1, "document has no reactions");

  const std::size_t s = species.size();
  auto to_complex = [&](const std::vector<std::pair<std::string, int>>& terms) {
    Complex c = zero_complex(s);
    for (const auto& [name, coeff] : terms) c.coeffs[species_pos.at(name)] += coeff;
    return c;
  };

  std::vector<Reaction> reactions;
  std::map<Reaction, Rational> hints;
  auto add_hint = [&](const Reaction& r, const Rational& v, std::size_t line, std::size_t col) {
    auto [it, inserted] = hints.emplace(r, v);
    if (!inserted && it->second != v)
      throw ParseError(ErrorCode::ConflictingRate, line, col, "reaction given two different rates");
  };
  for (const auto& p : pending) {
    Reaction r{to_complex(p.reactant), to_complex(p.product)};
    if (r.reactant == r.product)
      throw ParseError(ErrorCode::TrivialReaction, p.line, p.column, "reactant equals product");
    reactions.push_back(r);
    if (p.rate) add_hint(r, *p.rate, p.line, p.column);
  }

  Network network;
  try {
    network = build_network(species, reactions);
  } catch (const Error& e) {
    throw ParseError(e.code(), line_no, 1, e.what());
  }
  if (fully_open) network = fully_open_closure(network);

  for (const auto& pr : pending_rates) {
    auto idx = network.species_index(pr.species);
    if (!idx) throw ParseError(ErrorCode::SyntaxError, pr.line, pr.column, "unknown species '" + pr.species + "'");
    Reaction r{zero_complex(s), unit_complex(s, *idx)};
    if (!pr.inflow) r = r.reversed();
    if (!network.contains(r))
      throw ParseError(ErrorCode::SyntaxError, pr.line, pr.column,
                       "rate given for a flow reaction that is not in the network");
    add_hint(r, pr.value, pr.line, pr.column);
  }
  return NetworkDocument{std::move(network), fully_open, std::move(hints)};
}

namespace detail {

// One output line: a directed reaction or a reversible pair.
struct RenderUnit {
  Reaction forward;
  std::optional<Reaction> backward;
  bool flow = false;
};

inline std::optional<std::string> render_unit(const RenderUnit& u, bool swap, const NetworkDocument& doc,
                                              bool inline_rates) {
  const auto& species = doc.network.species();
  Reaction first = u.forward;
  std::optional<Reaction> second = u.backward;
  if (swap) {
    if (!second) return std::nullopt;
    std::swap(first, *second);
  }
  std::string line = format_reaction(first, species, second ? "<->" : "->");
  if (!inline_rates) return line;
  auto h1 = doc.rate_hints.find(first);
  std::optional<Rational> k1 = h1 == doc.rate_hints.end() ? std::nullopt : std::optional<Rational>(h1->second);
  std::optional<Rational> k2;
  if (second) {
    auto h2 = doc.rate_hints.find(*second);
    if (h2 != doc.rate_hints.end()) k2 = h2->second;
  }
  if (k2 && !k1) return std::nullopt;
  if (k1) line += ", k=" + to_string(*k1);
  if (k2) line += ", k'=" + to_string(*k2);
  return line;
}

// Species in the order a reader meets them on the rendered line.
inline std::vector<std::size_t> appearance(const RenderUnit& u, bool swap) {
  const Reaction& r = swap ? *u.backward : u.forward;
  std::vector<std::size_t> out;
  for (const Complex* c : {&r.reactant, &r.product})
    for (std::size_t i = 0; i < c->size(); ++i)
      if ((*c)[i] != 0) out.push_back(i);
  return out;
}

}  // namespace detail

/// Canonical text. parse_network(render_network(d)) == d.
inline std::string render_network(const NetworkDocument& doc) {
  const Network& n = doc.network;
  const std::size_t s = n.species_count();

  std::vector<detail::RenderUnit> units;
  for (const auto& r : n.reactions()) {
    const Reaction rev = r.reversed();
    if (n.contains(rev) && rev < r) continue;
    detail::RenderUnit u;
    u.forward = r;
    if (n.contains(rev)) u.backward = rev;
    u.flow = is_flow_reaction(r);
    units.push_back(u);
  }
  const bool flows_implied = doc.fully_open;
  auto inline_rates_for = [&](const detail::RenderUnit& u) { return !(flows_implied && u.flow); };

  std::vector<std::string> lines;
  std::vector<bool> emitted(units.size(), false);
  std::size_t introduced = 0;
  bool stuck = false;

  auto try_emit = [&](std::size_t k) -> bool {
    for (bool swap : {false, true}) {
      auto text = detail::render_unit(units[k], swap, doc, inline_rates_for(units[k]));
      if (!text) continue;
      std::vector<std::size_t> fresh;
      for (std::size_t sp : detail::appearance(units[k], swap))
        if (sp >= introduced && std::find(fresh.begin(), fresh.end(), sp) == fresh.end()) fresh.push_back(sp);
      bool ok = true;
      for (std::size_t j = 0; j < fresh.size(); ++j) ok = ok && fresh[j] == introduced + j;
      if (!ok) continue;
      introduced += fresh.size();
      lines.push_back(*text);
      emitted[k] = true;
      return true;
    }
    return false;
  };

  while (true) {
    bool progress = false;
    for (std::size_t k = 0; k < units.size() && !progress; ++k)
      if (!emitted[k] && !(flows_implied && units[k].flow)) progress = try_emit(k);
    if (progress) continue;
    bool pending = false;
    for (std::size_t k = 0; k < units.size(); ++k)
      pending = pending || (!emitted[k] && !(flows_implied && units[k].flow));
    if (!pending && introduced == s) break;
    // A flow line introduces exactly the next species.
    if (flows_implied && introduced < s) {
      for (std::size_t k = 0; k < units.size() && !progress; ++k)
        if (!emitted[k] && units[k].flow && detail::appearance(units[k], false).front() == introduced)
          progress = try_emit(k);
    }
    if (!progress) {
      stuck = true;
      break;
    }
  }

  std::ostringstream out;
  if (doc.fully_open) out << "@fully_open\n";
  if (stuck) {
    lines.clear();
    out << "@species";
    for (const auto& name : n.species()) out << ' ' << name;
    out << '\n';
    for (const auto& u : units) {
      if (flows_implied && u.flow) continue;
      auto text = detail::render_unit(u, false, doc, true);
      if (!text) text = detail::render_unit(u, true, doc, true);
      lines.push_back(*text);
    }
  }
  for (const auto& l : lines) out << l << '\n';
  if (flows_implied) {
    for (std::size_t i = 0; i < s; ++i) {
      const Reaction in{zero_complex(s), unit_complex(s, i)};
      if (auto it = doc.rate_hints.find(in); it != doc.rate_hints.end())
        out << "@rate k_" << n.species()[i] << ' ' << to_string(it->second) << '\n';
      if (auto it = doc.rate_hints.find(in.reversed()); it != doc.rate_hints.end())
        out << "@rate l_" << n.species()[i] << ' ' << to_string(it->second) << '\n';
    }
  }
  return out.str();
}

inline NetworkDocument make_document(Network n, bool fully_open = false) {
  return NetworkDocument{std::move(n), fully_open, {}};
}

}  // namespace crnmss
