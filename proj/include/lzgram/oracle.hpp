#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "common.hpp"

// Brute-force reference computations for tests and the `oracle` subcommand.
namespace lzgram::oracle {

/// Longest common prefix of s[i..t-1] and s[t..n] (1-based).
inline std::size_t lcp_bounded(TextView s, std::size_t i, std::size_t t) {
  if (i < 1 || i >= t || t > s.size()) throw error(errc::out_of_range, "need 1 <= i < t <= n");
  std::size_t j = 0;
  while (i + j <= t - 1 && t + j <= s.size() && s[i + j - 1] == s[t + j - 1]) ++j;
  return j;
}

/// Minimal p such that s[p .. p+hi-lo] equals s[lo..hi] (1-based, inclusive).
inline std::size_t first_occurrence(TextView s, std::size_t lo, std::size_t hi) {
  if (lo < 1 || lo > hi || hi > s.size()) throw error(errc::out_of_range, "need 1 <= lo <= hi <= n");
  const TextView needle = s.substr(lo - 1, hi - lo + 1);
  for (std::size_t p = 1; p < lo; ++p)
    if (s.substr(p - 1, needle.size()) == needle) return p;
  return lo;
}

inline constexpr std::size_t kMaxExactLength = 8;

namespace detail {

inline bool has_disjoint_repeat(TextView s, TextView w) {
  const std::size_t first = s.find(w);
  return first != TextView::npos && s.find(w, first + w.size()) != TextView::npos;
}

// Fewest symbols spelling `w` from single bytes and the chosen candidates
// that are strictly shorter than `w`.
inline std::size_t segment_cost(TextView w, const std::vector<std::string>& candidates,
                                std::uint32_t mask) {
  std::vector<std::size_t> dp(w.size() + 1, 0);
  for (std::size_t k = 1; k <= w.size(); ++k) {
    std::size_t best = dp[k - 1] + 1;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (!(mask >> c & 1u)) continue;
      const std::string& u = candidates[c];
      if (u.size() >= w.size() || u.size() > k) continue;
      if (w.substr(k - u.size(), u.size()) == u) best = std::min(best, dp[k - u.size()] + 1);
    }
    dp[k] = best;
  }
  return dp[w.size()];
}

/// Exhaustive search over sets of nonterminal expansions. For a fixed set the
/// rules are independent, so each is a shortest segmentation. With
/// `repeated_only`, candidates are limited to substrings with two disjoint
/// occurrences, which every nonterminal used at least twice must have.
inline std::size_t smallest_grammar_search(TextView s, bool repeated_only) {
  std::set<std::string> distinct;
  for (std::size_t len = 2; len < s.size(); ++len)
    for (std::size_t lo = 0; lo + len <= s.size(); ++lo) {
      const TextView w = s.substr(lo, len);
      if (!repeated_only || has_disjoint_repeat(s, w)) distinct.emplace(w);
    }
  const std::vector<std::string> candidates(distinct.begin(), distinct.end());
  if (candidates.size() > 24) throw error(errc::too_large, "too many candidate nonterminals");

  std::size_t best = s.size();
  const std::uint32_t subsets = std::uint32_t{1} << candidates.size();
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    std::size_t total = segment_cost(s, candidates, mask);
    for (std::size_t c = 0; c < candidates.size() && total < best; ++c)
      if (mask >> c & 1u) total += segment_cost(candidates[c], candidates, mask);
    best = std::min(best, total);
  }
  return best;
}

}  // namespace detail

/// Size (total right-hand side length) of a smallest grammar generating
/// exactly `s`. Exhaustive; only for n <= 8.
inline std::size_t smallest_grammar_size(TextView s) {
  if (s.empty()) throw error(errc::empty_input, "smallest grammar of an empty text is undefined");
  if (s.size() > kMaxExactLength)
    throw error(errc::too_large, "exact smallest grammar search is limited to 8 bytes");
  return detail::smallest_grammar_search(s, true);
}

}  // namespace lzgram::oracle
