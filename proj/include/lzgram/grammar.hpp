#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "lz77.hpp"

namespace lzgram {

using NonterminalId = std::uint32_t;

struct Symbol {
  bool terminal = true;
  std::uint32_t value = 0;  // byte for terminals, nonterminal id otherwise

  static constexpr Symbol term(std::uint8_t b) { return {true, b}; }
  static constexpr Symbol nonterm(NonterminalId id) { return {false, id}; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

using Rhs = std::vector<Symbol>;

/// A straight-line grammar: exactly one production per nonterminal, ids dense
/// in [0, rules.size()). `start` is 0 for every grammar built here.
struct Grammar {
  NonterminalId start = 0;
  std::vector<Rhs> rules;

  std::size_t production_count() const noexcept { return rules.size(); }

  friend bool operator==(const Grammar&, const Grammar&) = default;
};

inline std::size_t grammar_size(const Grammar& g) noexcept {
  std::size_t size = 0;
  for (const auto& rhs : g.rules) size += rhs.size();
  return size;
}

inline bool is_cnf(const Grammar& g) noexcept {
  for (const auto& rhs : g.rules) {
    const bool term = rhs.size() == 1 && rhs[0].terminal;
    const bool pair = rhs.size() == 2 && !rhs[0].terminal && !rhs[1].terminal;
    if (!term && !pair) return false;
  }
  return true;
}

/// Ids of all nonterminals in an order where every nonterminal appears after
/// the ones on its right-hand side. Throws errc::cyclic on a cycle and
/// errc::malformed_format on dangling ids or empty right-hand sides.
inline std::vector<NonterminalId> topological_order(const Grammar& g) {
  const std::size_t k = g.rules.size();
  if (g.start >= k) throw error(errc::malformed_format, "start symbol has no production");
  enum : std::uint8_t { unseen, open, done };
  std::vector<std::uint8_t> state(k, unseen);
  std::vector<NonterminalId> order;
  order.reserve(k);
  std::vector<std::pair<NonterminalId, std::size_t>> stack;
  for (NonterminalId root = 0; root < k; ++root) {
    if (state[root] != unseen) continue;
    stack.push_back({root, 0});
    state[root] = open;
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      const Rhs& rhs = g.rules[id];
      if (rhs.empty())
        throw error(errc::malformed_format, "empty production for " + std::to_string(id));
      if (next == rhs.size()) {
        state[id] = done;
        order.push_back(id);
        stack.pop_back();
        continue;
      }
      const Symbol sym = rhs[next++];
      if (sym.terminal) continue;
      if (sym.value >= k)
        throw error(errc::malformed_format, "reference to undefined nonterminal " +
                                                std::to_string(sym.value));
      if (state[sym.value] == open)
        throw error(errc::cyclic, "cycle through nonterminal " + std::to_string(sym.value));
      if (state[sym.value] == unseen) {
        state[sym.value] = open;
        stack.push_back({sym.value, 0});
      }
    }
  }
  return order;
}

/// Expansion length of every nonterminal. Saturates rather than overflowing,
/// so a hostile grammar cannot wrap the counts.
inline std::vector<std::size_t> expansion_lengths(const Grammar& g) {
  constexpr std::size_t kMax = std::size_t{1} << 62;
  std::vector<std::size_t> len(g.rules.size(), 0);
  for (NonterminalId id : topological_order(g)) {
    std::size_t total = 0;
    for (const Symbol& sym : g.rules[id]) {
      total += sym.terminal ? 1 : len[sym.value];
      if (total > kMax) total = kMax;
    }
    len[id] = total;
  }
  return len;
}

/// Throws unless `g` is acyclic, fully defined and every nonterminal is
/// reachable from the start symbol.
inline void validate_grammar(const Grammar& g) {
  topological_order(g);
  std::vector<bool> seen(g.rules.size(), false);
  std::vector<NonterminalId> stack{g.start};
  seen[g.start] = true;
  while (!stack.empty()) {
    const NonterminalId id = stack.back();
    stack.pop_back();
    for (const Symbol& sym : g.rules[id]) {
      if (!sym.terminal && !seen[sym.value]) {
        seen[sym.value] = true;
        stack.push_back(sym.value);
      }
    }
  }
  for (std::size_t id = 0; id < seen.size(); ++id)
    if (!seen[id])
      throw error(errc::malformed_format,
                  "nonterminal " + std::to_string(id) + " is unreachable from start");
}

namespace detail {

// Expands `root` into `out`. The first expansion of a nonterminal records its
// offset; later occurrences copy the bytes already written, so the cost is
// linear in output plus grammar size.
inline void expand_into(const Grammar& g, NonterminalId root, Text& out,
                        std::vector<std::size_t>& first_at,
                        const std::vector<std::size_t>& len) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  struct Frame {
    NonterminalId id;
    std::size_t next;
  };
  std::vector<Frame> stack;
  auto enter = [&](NonterminalId id) {
    if (first_at[id] != kNone) {
      const std::size_t from = first_at[id];
      for (std::size_t j = 0; j < len[id]; ++j) out.push_back(out[from + j]);
      return;
    }
    first_at[id] = out.size();
    stack.push_back({id, 0});
  };
  enter(root);
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Rhs& rhs = g.rules[f.id];
    if (f.next == rhs.size()) {
      stack.pop_back();
      continue;
    }
    const Symbol sym = rhs[f.next++];
    if (sym.terminal)
      out.push_back(static_cast<char>(sym.value));
    else
      enter(sym.value);
  }
}

}  // namespace detail

inline Text expand(const Grammar& g) {
  const auto len = expansion_lengths(g);
  Text out;
  out.reserve(len[g.start]);
  std::vector<std::size_t> first_at(g.rules.size(), static_cast<std::size_t>(-1));
  detail::expand_into(g, g.start, out, first_at, len);
  return out;
}

/// Expansion of every nonterminal; only for small grammars (tests, dedup checks).
inline std::vector<Text> expand_all(const Grammar& g) {
  const auto len = expansion_lengths(g);
  std::vector<Text> out(g.rules.size());
  for (NonterminalId id : topological_order(g)) {
    Text& s = out[id];
    s.reserve(len[id]);
    for (const Symbol& sym : g.rules[id]) {
      if (sym.terminal)
        s.push_back(static_cast<char>(sym.value));
      else
        s += out[sym.value];
    }
  }
  return out;
}

/// Drops productions unreachable from start and renumbers the rest densely,
/// keeping relative order and mapping start to id 0.
inline Grammar compact(const Grammar& g) {
  const std::size_t k = g.rules.size();
  std::vector<bool> seen(k, false);
  std::vector<NonterminalId> stack{g.start};
  seen[g.start] = true;
  while (!stack.empty()) {
    const NonterminalId id = stack.back();
    stack.pop_back();
    for (const Symbol& sym : g.rules[id])
      if (!sym.terminal && !seen[sym.value]) {
        seen[sym.value] = true;
        stack.push_back(sym.value);
      }
  }
  std::vector<NonterminalId> remap(k, 0);
  NonterminalId next = 1;
  for (NonterminalId id = 0; id < k; ++id)
    if (seen[id] && id != g.start) remap[id] = next++;
  remap[g.start] = 0;

  Grammar out;
  out.start = 0;
  out.rules.resize(next);
  for (NonterminalId id = 0; id < k; ++id) {
    if (!seen[id]) continue;
    Rhs rhs = g.rules[id];
    for (Symbol& sym : rhs)
      if (!sym.terminal) sym.value = remap[sym.value];
    out.rules[remap[id]] = std::move(rhs);
  }
  return out;
}

// Grammar text format:
//   GRAMMAR v1 n=<n> start=<id> prods=<k>
//   <id> T <byte> | <id> B <id> <id> | <id> S <id> <id> ...
inline void write_grammar(std::ostream& os, const Grammar& g) {
  const auto len = expansion_lengths(g);
  os << "GRAMMAR v1 n=" << len[g.start] << " start=" << g.start << " prods=" << g.rules.size()
     << '\n';
  for (std::size_t id = 0; id < g.rules.size(); ++id) {
    const Rhs& rhs = g.rules[id];
    if (rhs.size() == 1 && rhs[0].terminal) {
      os << id << " T " << rhs[0].value << '\n';
      continue;
    }
    for (const Symbol& sym : rhs)
      if (sym.terminal)
        throw error(errc::shape, "production " + std::to_string(id) +
                                     " mixes terminals into a nonterminal sequence");
    os << id << (rhs.size() == 2 ? " B" : " S");
    for (const Symbol& sym : rhs) os << ' ' << sym.value;
    os << '\n';
  }
}

/// Reads the grammar text format. The declared n is returned through
/// `declared_length` so callers can verify it against the expansion.
inline Grammar read_grammar(std::istream& is, std::size_t* declared_length = nullptr) {
  std::string line;
  if (!std::getline(is, line)) detail::malformed("missing GRAMMAR header");
  auto head = detail::split_fields(line);
  std::size_t n = 0;
  std::size_t start = 0;
  std::size_t prods = 0;
  if (head.size() != 5 || head[0] != "GRAMMAR" || head[1] != "v1" ||
      !detail::parse_keyed(head[2], "n=", n) || !detail::parse_keyed(head[3], "start=", start) ||
      !detail::parse_keyed(head[4], "prods=", prods))
    detail::malformed("bad GRAMMAR header: " + line);
  if (prods == 0 || start >= prods || prods > (std::size_t{1} << 31))
    detail::malformed("bad production count or start id");

  Grammar g;
  g.start = static_cast<NonterminalId>(start);
  g.rules.resize(prods);
  std::vector<bool> defined(prods, false);
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    auto f = detail::split_fields(line);
    if (f.empty()) continue;
    auto bad = [&] { detail::malformed("bad production at line " + std::to_string(lineno)); };
    std::size_t id = 0;
    if (f.size() < 3 || !detail::parse_size(f[0], id) || id >= prods) bad();
    if (defined[id]) detail::malformed("duplicate production for " + std::to_string(id));
    defined[id] = true;
    Rhs rhs;
    if (f[1] == "T") {
      std::size_t b = 0;
      if (f.size() != 3 || !detail::parse_size(f[2], b) || b > 255) bad();
      rhs.push_back(Symbol::term(static_cast<std::uint8_t>(b)));
    } else if (f[1] == "B" || f[1] == "S") {
      if (f[1] == "B" && f.size() != 4) bad();
      for (std::size_t k = 2; k < f.size(); ++k) {
        std::size_t ref = 0;
        if (!detail::parse_size(f[k], ref) || ref >= prods) bad();
        rhs.push_back(Symbol::nonterm(static_cast<NonterminalId>(ref)));
      }
    } else {
      bad();
    }
    g.rules[id] = std::move(rhs);
  }
  for (std::size_t id = 0; id < prods; ++id)
    if (!defined[id]) detail::malformed("missing production for " + std::to_string(id));
  validate_grammar(g);
  if (declared_length) *declared_length = n;
  return g;
}

}  // namespace lzgram
