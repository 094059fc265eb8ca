#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string_view>
#include <vector>

namespace lzgram::detail {

// Suffix array by prefix doubling, 0-based positions.
inline std::vector<std::size_t> build_suffix_array(std::string_view s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> sa(n);
  std::vector<std::size_t> rank(n);
  std::vector<std::size_t> tmp(n);
  std::iota(sa.begin(), sa.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) rank[i] = static_cast<std::uint8_t>(s[i]);

  for (std::size_t k = 1;; k <<= 1) {
    auto key = [&](std::size_t i) {
      // second component shifted by one so that "past the end" sorts first
      return std::pair<std::size_t, std::size_t>(rank[i], i + k < n ? rank[i + k] + 1 : 0);
    };
    std::sort(sa.begin(), sa.end(),
              [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    if (n == 0) break;
    tmp[sa[0]] = 0;
    for (std::size_t r = 1; r < n; ++r)
      tmp[sa[r]] = tmp[sa[r - 1]] + (key(sa[r - 1]) < key(sa[r]) ? 1 : 0);
    rank.swap(tmp);
    if (rank[sa[n - 1]] == n - 1) break;
  }
  return sa;
}

// Kasai: lcp[r] = LCP(suffix sa[r-1], suffix sa[r]); lcp[0] = 0.
inline std::vector<std::size_t> build_lcp_array(std::string_view s,
                                                const std::vector<std::size_t>& sa,
                                                std::vector<std::size_t>& rank) {
  const std::size_t n = s.size();
  rank.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) rank[sa[r]] = r;
  std::vector<std::size_t> lcp(n, 0);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = h;
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace lzgram::detail
