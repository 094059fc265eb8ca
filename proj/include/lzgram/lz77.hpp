#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "suffix_array.hpp"

namespace lzgram {

/// One phrase of a non-self-referencing LZ77 parse: a literal byte, or a copy
/// of `length` bytes starting at 1-based `source` in the already-parsed prefix.
struct PhraseToken {
  enum class Kind : std::uint8_t { literal, copy };

  Kind kind = Kind::literal;
  std::uint8_t byte = 0;
  std::size_t source = 0;
  std::size_t copy_length = 0;

  static PhraseToken literal(std::uint8_t b) { return {Kind::literal, b, 0, 0}; }
  static PhraseToken copy(std::size_t source, std::size_t length) {
    return {Kind::copy, 0, source, length};
  }

  bool is_copy() const noexcept { return kind == Kind::copy; }
  std::size_t length() const noexcept { return is_copy() ? copy_length : 1; }

  friend bool operator==(const PhraseToken&, const PhraseToken&) = default;
};

struct Parse {
  std::vector<PhraseToken> tokens;

  std::size_t text_length() const noexcept {
    std::size_t n = 0;
    for (const auto& tok : tokens) n += tok.length();
    return n;
  }

  /// 1-based start position of every token, plus n+1 as a sentinel.
  std::vector<std::size_t> starts() const {
    std::vector<std::size_t> out;
    out.reserve(tokens.size() + 1);
    std::size_t pos = 1;
    for (const auto& tok : tokens) {
      out.push_back(pos);
      pos += tok.length();
    }
    out.push_back(pos);
    return out;
  }

  friend bool operator==(const Parse&, const Parse&) = default;
};

inline std::size_t phrase_count(const Parse& parse) noexcept { return parse.tokens.size(); }

/// Throws errc::malformed_parse unless every copy has length >= 2, source >= 1
/// and ends strictly before its own destination.
inline void validate_parse(const Parse& parse) {
  std::size_t t = 1;
  for (std::size_t k = 0; k < parse.tokens.size(); ++k) {
    const auto& tok = parse.tokens[k];
    if (tok.is_copy()) {
      if (tok.copy_length < 2 || tok.source < 1 || tok.source + tok.copy_length > t)
        throw error(errc::malformed_parse,
                    "token " + std::to_string(k + 1) + " copies (" +
                        std::to_string(tok.source) + "," + std::to_string(tok.copy_length) +
                        ") outside the decoded prefix of length " + std::to_string(t - 1));
    }
    t += tok.length();
  }
}

// Algorithm 1 as written, with the comparison capped at t-1 and at n.
inline Parse parse_lz77_naive(TextView s) {
  const std::size_t n = s.size();
  Parse out;
  std::size_t t = 1;
  while (t <= n) {
    std::size_t max_match = 0;
    std::size_t max_length = 0;
    for (std::size_t i = 1; i < t; ++i) {
      std::size_t j = 0;
      while (i + j <= t - 1 && t + j <= n && s[i + j - 1] == s[t + j - 1]) ++j;
      if (j > max_length) {
        max_match = i;
        max_length = j;
      }
    }
    if (max_length <= 1) {
      out.tokens.push_back(PhraseToken::literal(byte_at(s, t)));
      t += 1;
    } else {
      out.tokens.push_back(PhraseToken::copy(max_match, max_length));
      t += max_length;
    }
  }
  return out;
}

/// Greedy non-self-referencing LZ77 parse; each copy uses the minimal source
/// among those achieving the longest match. Token-identical to
/// parse_lz77_naive, but candidate sources are found by walking outward from
/// the cursor's suffix-array rank while the running LCP can still win.
inline Parse parse_lz77(TextView s) {
  const std::size_t n = s.size();
  Parse out;
  if (n == 0) return out;

  const auto sa = detail::build_suffix_array(s);
  std::vector<std::size_t> rank;
  const auto lcp = detail::build_lcp_array(s, sa, rank);
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();

  std::size_t p = 0;  // 0-based cursor
  while (p < n) {
    std::size_t best_len = 0;
    std::size_t best_src = kInf;
    auto consider = [&](std::size_t cand, std::size_t running) {
      if (cand >= p) return;
      const std::size_t len = std::min(running, p - cand);
      if (len > best_len || (len == best_len && cand < best_src)) {
        best_len = len;
        best_src = cand;
      }
    };
    const std::size_t r = rank[p];

    std::size_t running = kInf;
    for (std::size_t k = r; k > 0; --k) {
      running = std::min(running, lcp[k]);
      if (running < 2 || running < best_len) break;
      consider(sa[k - 1], running);
    }
    running = kInf;
    for (std::size_t k = r + 1; k < n; ++k) {
      running = std::min(running, lcp[k]);
      if (running < 2 || running < best_len) break;
      consider(sa[k], running);
    }

    if (best_len <= 1) {
      out.tokens.push_back(PhraseToken::literal(static_cast<std::uint8_t>(s[p])));
      p += 1;
    } else {
      out.tokens.push_back(PhraseToken::copy(best_src + 1, best_len));
      p += best_len;
    }
  }
  return out;
}

inline Text decode_parse(const Parse& parse) {
  Text out;
  out.reserve(parse.text_length());
  for (std::size_t k = 0; k < parse.tokens.size(); ++k) {
    const auto& tok = parse.tokens[k];
    if (!tok.is_copy()) {
      out.push_back(static_cast<char>(tok.byte));
      continue;
    }
    const std::size_t t = out.size() + 1;
    if (tok.source < 1 || tok.copy_length < 2 || tok.source + tok.copy_length > t)
      throw error(errc::malformed_parse,
                  "copy token " + std::to_string(k + 1) + " reads outside the decoded prefix");
    for (std::size_t j = 0; j < tok.copy_length; ++j) out.push_back(out[tok.source - 1 + j]);
  }
  return out;
}

/// Renders a parse the way it is usually written out by hand:
/// literals verbatim, copies as "(source,length)".
inline std::string render_parse(const Parse& parse) {
  std::string out;
  for (const auto& tok : parse.tokens) {
    if (tok.is_copy())
      out += "(" + std::to_string(tok.source) + "," + std::to_string(tok.copy_length) + ")";
    else
      out.push_back(static_cast<char>(tok.byte));
  }
  return out;
}

// Token-stream text format:
//   LZ77 v1 n=<n>
//   L <byte>           | C <source> <length>
inline void write_parse(std::ostream& os, const Parse& parse) {
  os << "LZ77 v1 n=" << parse.text_length() << '\n';
  for (const auto& tok : parse.tokens) {
    if (tok.is_copy())
      os << "C " << tok.source << ' ' << tok.copy_length << '\n';
    else
      os << "L " << static_cast<unsigned>(tok.byte) << '\n';
  }
}

namespace detail {

inline bool parse_size(std::string_view field, std::size_t& out) {
  if (field.empty() || field.size() > 19) return false;
  std::size_t v = 0;
  for (char c : field) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  out = v;
  return true;
}

inline bool parse_keyed(std::string_view field, std::string_view key, std::size_t& out) {
  if (field.substr(0, key.size()) != key) return false;
  return parse_size(field.substr(key.size()), out);
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  for (std::string f; in >> f;) fields.push_back(f);
  return fields;
}

[[noreturn]] inline void malformed(const std::string& what) {
  throw error(errc::malformed_format, what);
}

}  // namespace detail

inline Parse read_parse(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) detail::malformed("missing LZ77 header");
  auto head = detail::split_fields(line);
  std::size_t n = 0;
  if (head.size() != 3 || head[0] != "LZ77" || head[1] != "v1" ||
      !detail::parse_keyed(head[2], "n=", n))
    detail::malformed("bad LZ77 header: " + line);

  Parse parse;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    auto f = detail::split_fields(line);
    if (f.empty()) continue;
    std::size_t a = 0;
    std::size_t b = 0;
    if (f[0] == "L" && f.size() == 2 && detail::parse_size(f[1], a) && a <= 255) {
      parse.tokens.push_back(PhraseToken::literal(static_cast<std::uint8_t>(a)));
    } else if (f[0] == "C" && f.size() == 3 && detail::parse_size(f[1], a) &&
               detail::parse_size(f[2], b)) {
      parse.tokens.push_back(PhraseToken::copy(a, b));
    } else {
      detail::malformed("bad token record at line " + std::to_string(lineno) + ": " + line);
    }
  }
  if (parse.text_length() != n) detail::malformed("token lengths do not sum to n");
  validate_parse(parse);
  return parse;
}

}  // namespace lzgram
