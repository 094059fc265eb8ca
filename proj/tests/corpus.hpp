#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace lzgram::testing {

inline const std::string kWoodchuck =
    "how-much-wood-would-a-woodchuck-chuck-if-a-woodchuck-could-chuck-wood?";

inline std::string random_text(std::mt19937_64& rng, std::size_t alphabet, std::size_t n) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(alphabet) - 1);
  std::string s(n, '\0');
  for (auto& c : s) {
    const int v = pick(rng);
    c = static_cast<char>(alphabet <= 26 ? 'a' + v : v);
  }
  return s;
}

inline std::string fibonacci_word(std::size_t n) {
  std::string prev = "b";
  std::string cur = "a";
  while (cur.size() < n) {
    std::string next = cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur.substr(0, n);
}

inline std::string repeat(const std::string& unit, std::size_t n) {
  std::string s;
  while (s.size() < n) s += unit;
  return s.substr(0, n);
}

/// Deterministic corpus: random texts over alphabets of size 2/4/26/256,
/// periodic strings, Fibonacci words and a few hand-picked inputs, all with
/// length in [1, max_len].
inline std::vector<std::string> make_corpus(std::size_t count = 1000, std::size_t max_len = 2000,
                                            std::uint64_t seed = 20100312) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> corpus{kWoodchuck, "a", "ab", "aaaa", "abab", "aaaaaaaa",
                                  "abracadabra", "mississippi"};
  std::uniform_int_distribution<std::size_t> length(1, max_len);
  std::uniform_int_distribution<std::size_t> small_length(1, 64);
  const std::size_t alphabets[] = {2, 4, 26, 256};
  std::size_t k = 0;
  while (corpus.size() < count) {
    // every fourth text is short so tiny edge shapes stay well represented
    const std::size_t n = (k % 4 == 3) ? small_length(rng) : length(rng);
    switch (k % 8) {
      case 0:
      case 1:
      case 2:
      case 3:
        corpus.push_back(random_text(rng, alphabets[k % 4], n));
        break;
      case 4:
        corpus.push_back(repeat("ab", n));
        break;
      case 5:
        corpus.push_back(std::string(n, 'a'));
        break;
      case 6:
        corpus.push_back(fibonacci_word(n));
        break;
      default: {
        // random unit repeated with light mutation
        std::string unit = random_text(rng, 4, 1 + n % 17);
        std::string s = repeat(unit, n);
        std::uniform_int_distribution<std::size_t> where(0, n - 1);
        for (std::size_t m = 0; m < n / 50; ++m) s[where(rng)] = 'z';
        corpus.push_back(std::move(s));
        break;
      }
    }
    ++k;
  }
  return corpus;
}

}  // namespace lzgram::testing
