#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "grammar.hpp"
#include "refine.hpp"

namespace lzgram {

/// Views an aligned parse as a grammar: nonterminal k (1-based) per phrase,
/// literal phrases derive their byte, copy phrases derive the run of phrase
/// nonterminals covering their source, and 0 -> 1 2 ... m.
inline Grammar grammar_from_parse(const Parse& parse) {
  if (parse.tokens.empty()) throw error(errc::empty_input, "cannot build a grammar from an empty parse");
  validate_parse(parse);
  if (!check_alignment(parse))
    throw error(errc::alignment, "copy sources are not aligned to phrase boundaries");

  const auto starts = parse.starts();
  const std::size_t m = parse.tokens.size();
  // phrase_at[p] = 1-based index of the phrase starting at position p
  std::vector<NonterminalId> phrase_at(starts.back() + 1, 0);
  for (std::size_t k = 0; k <= m; ++k) phrase_at[starts[k]] = static_cast<NonterminalId>(k + 1);

  Grammar g;
  g.start = 0;
  g.rules.resize(m + 1);
  for (NonterminalId k = 1; k <= m; ++k) g.rules[0].push_back(Symbol::nonterm(k));
  for (std::size_t k = 0; k < m; ++k) {
    const auto& tok = parse.tokens[k];
    Rhs& rhs = g.rules[k + 1];
    if (!tok.is_copy()) {
      rhs.push_back(Symbol::term(tok.byte));
      continue;
    }
    const NonterminalId first = phrase_at[tok.source];
    const NonterminalId past = phrase_at[tok.source + tok.copy_length];
    for (NonterminalId x = first; x < past; ++x) rhs.push_back(Symbol::nonterm(x));
  }
  return g;
}

/// Leaf counts of the forest of complete binary trees over m leaves, left to
/// right, each tree as large as the remaining leaves allow.
inline std::vector<std::size_t> forest_tree_sizes(std::size_t m) {
  std::vector<std::size_t> sizes;
  while (m > 0) {
    const std::size_t t = std::bit_floor(m);
    sizes.push_back(t);
    m -= t;
  }
  return sizes;
}

/// CNF grammar plus, for every nonterminal, the run of phrase nonterminals
/// [first, last] it derives (phrase k is [k, k], the start is [1, m]).
/// Terminal-only grammars for a single phrase report [1, 1] for the start.
struct CnfConversion {
  Grammar grammar;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::vector<std::size_t> tree_sizes;
};

namespace detail {

class CnfBuilder {
 public:
  explicit CnfBuilder(std::size_t m) : m_(m) {
    std::size_t lo = 1;
    for (std::size_t size : forest_tree_sizes(m)) {
      tree_start_.push_back(lo);
      tree_size_.push_back(size);
      lo += size;
    }
  }

  // Production ids 1..m are the phrase nonterminals; fresh range nonterminals
  // are appended after them.
  std::vector<Rhs> rules;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;

  Symbol range_symbol(std::size_t a, std::size_t b) {
    if (a == b) return Symbol::nonterm(static_cast<NonterminalId>(a));
    if (auto it = memo_.find({a, b}); it != memo_.end()) return Symbol::nonterm(it->second);
    const auto id = static_cast<NonterminalId>(rules.size());
    memo_.emplace(std::make_pair(a, b), id);
    rules.emplace_back();
    ranges.push_back({a, b});
    Rhs rhs = split(a, b);
    rules[id] = std::move(rhs);
    return Symbol::nonterm(id);
  }

  /// Binary right-hand side for the run [a, b], a < b. A run crossing trees
  /// splits at the right end of the tree holding a; a run inside one tree
  /// splits at the midpoint of the lowest complete subtree containing it.
  Rhs split(std::size_t a, std::size_t b) {
    const std::size_t tree = static_cast<std::size_t>(
        std::upper_bound(tree_start_.begin(), tree_start_.end(), a) - tree_start_.begin() - 1);
    const std::size_t ts = tree_start_[tree];
    const std::size_t te = ts + tree_size_[tree] - 1;
    std::size_t mid = 0;
    if (b > te) {
      mid = te;
    } else {
      const std::size_t x = a - ts;
      const std::size_t y = b - ts;
      const int height = std::bit_width(x ^ y);  // lowest common subtree has 2^height leaves
      const std::size_t node_lo = ts + ((x >> height) << height);
      mid = node_lo + (std::size_t{1} << (height - 1)) - 1;
    }
    Symbol left = range_symbol(a, mid);
    Symbol right = range_symbol(mid + 1, b);
    return {left, right};
  }

  std::size_t phrase_count() const noexcept { return m_; }

 private:
  std::size_t m_;
  std::vector<std::size_t> tree_start_;
  std::vector<std::size_t> tree_size_;
  std::map<std::pair<std::size_t, std::size_t>, NonterminalId> memo_;
};

// A run of consecutive ascending nonterminal ids within [1, m], or nullopt.
inline std::optional<std::pair<std::size_t, std::size_t>> as_run(const Rhs& rhs, std::size_t m) {
  if (rhs.empty() || rhs[0].terminal) return std::nullopt;
  const std::size_t a = rhs[0].value;
  for (std::size_t k = 0; k < rhs.size(); ++k)
    if (rhs[k].terminal || rhs[k].value != a + k) return std::nullopt;
  const std::size_t b = a + rhs.size() - 1;
  if (a < 1 || b > m) return std::nullopt;
  return std::make_pair(a, b);
}

}  // namespace detail

/// Converts a grammar_from_parse grammar to Chomsky normal form.
///
/// Builds the forest of complete binary trees over the phrase nonterminals,
/// then rewrites each run on a right-hand side into binary productions over
/// maximal subtrees, sharing one nonterminal per run [a, b]. A phrase whose
/// source is a single phrase takes over that phrase's CNF right-hand side.
inline CnfConversion to_cnf_detailed(const Grammar& g) {
  validate_grammar(g);
  if (g.start != 0 || g.rules.size() < 2)
    throw error(errc::shape, "expected start 0 followed by phrase nonterminals");
  const std::size_t m = g.rules.size() - 1;

  auto start_run = detail::as_run(g.rules[0], m);
  if (!start_run || start_run->first != 1 || start_run->second != m)
    throw error(errc::shape, "start must derive the full run of phrase nonterminals");
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> runs(m + 1);
  for (std::size_t k = 1; k <= m; ++k) {
    const Rhs& rhs = g.rules[k];
    if (rhs.size() == 1 && rhs[0].terminal) continue;
    runs[k] = detail::as_run(rhs, m);
    if (!runs[k])
      throw error(errc::shape, "production " + std::to_string(k) +
                                   " is neither a terminal nor a consecutive run");
  }

  detail::CnfBuilder builder(m);
  builder.rules.resize(m + 1);
  builder.ranges.resize(m + 1);
  builder.ranges[0] = {1, m};
  for (std::size_t k = 1; k <= m; ++k) builder.ranges[k] = {k, k};

  // Phrases in topological order so unit sources are resolved first.
  for (NonterminalId k : topological_order(g)) {
    if (k == 0) continue;
    if (!runs[k]) {
      builder.rules[k] = g.rules[k];
      continue;
    }
    const auto [a, b] = *runs[k];
    builder.rules[k] = (a == b) ? builder.rules[a] : builder.split(a, b);
  }
  builder.rules[0] = (m == 1) ? builder.rules[1] : builder.split(1, m);

  Grammar raw;
  raw.start = 0;
  raw.rules = std::move(builder.rules);

  // compact() keeps relative order, so carry the range labels through the
  // same reachability filter.
  std::vector<bool> reachable(raw.rules.size(), false);
  std::vector<NonterminalId> stack{0};
  reachable[0] = true;
  while (!stack.empty()) {
    const NonterminalId id = stack.back();
    stack.pop_back();
    for (const Symbol& sym : raw.rules[id])
      if (!sym.terminal && !reachable[sym.value]) {
        reachable[sym.value] = true;
        stack.push_back(sym.value);
      }
  }
  CnfConversion out;
  out.grammar = compact(raw);
  for (std::size_t id = 0; id < raw.rules.size(); ++id)
    if (reachable[id]) out.ranges.push_back(builder.ranges[id]);
  out.tree_sizes = forest_tree_sizes(m);
  return out;
}

inline Grammar to_cnf(const Grammar& g) { return to_cnf_detailed(g).grammar; }

/// Envelope on the CNF production count for m phrase nonterminals.
inline std::size_t cnf_production_bound(std::size_t m) {
  const std::size_t ceil_log = m <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(m - 1));
  return 4 * m * (ceil_log + 2);
}

}  // namespace lzgram
