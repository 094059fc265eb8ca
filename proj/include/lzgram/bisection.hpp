#pragma once

#include <bit>
#include <cstddef>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "grammar.hpp"

namespace lzgram {

/// Bisection grammar: a block of length > 1 splits into a prefix whose length
/// is the largest power of two strictly below the block length and the rest.
/// Blocks with equal content share one nonterminal (the first one created,
/// which has the smallest id).
inline Grammar bisection_grammar(TextView s) {
  if (s.empty()) throw error(errc::empty_input, "bisection needs a non-empty text");

  Grammar g;
  std::unordered_map<std::string_view, NonterminalId> interned;

  struct Pending {
    NonterminalId id;
    std::size_t lo;
    std::size_t len;
  };
  std::vector<Pending> work;

  auto intern = [&](std::size_t lo, std::size_t len) -> NonterminalId {
    const std::string_view block = s.substr(lo, len);
    auto [it, inserted] = interned.try_emplace(block, static_cast<NonterminalId>(g.rules.size()));
    if (inserted) {
      g.rules.emplace_back();
      work.push_back({it->second, lo, len});
    }
    return it->second;
  };

  intern(0, s.size());
  while (!work.empty()) {
    const Pending p = work.back();
    work.pop_back();
    if (p.len == 1) {
      g.rules[p.id] = {Symbol::term(static_cast<std::uint8_t>(s[p.lo]))};
      continue;
    }
    const std::size_t left = std::bit_floor(p.len - 1);
    const NonterminalId l = intern(p.lo, left);
    const NonterminalId r = intern(p.lo + left, p.len - left);
    g.rules[p.id] = {Symbol::nonterm(l), Symbol::nonterm(r)};
  }
  return g;
}

}  // namespace lzgram
