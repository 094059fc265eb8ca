#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "common.hpp"
#include "lz77.hpp"

namespace lzgram {

/// One level of the block decomposition. Retained blocks are kept as a sorted
/// index with a parallel value array: the 1-based position of the first
/// occurrence of the block's content when block_length > 1, otherwise the
/// block's byte.
struct BlockLevel {
  std::size_t block_length = 0;
  std::vector<std::size_t> index;
  std::vector<std::uint64_t> value;

  const std::uint64_t* find(std::size_t j) const {
    auto it = std::lower_bound(index.begin(), index.end(), j);
    if (it == index.end() || *it != j) return nullptr;
    return &value[static_cast<std::size_t>(it - index.begin())];
  }

  friend bool operator==(const BlockLevel&, const BlockLevel&) = default;
};

/// Levels i = 0..L of consecutive blocks of length ceil(n / b^i), with L the
/// first level whose blocks are single bytes.
struct BlockStructure {
  std::size_t n = 0;
  std::size_t base = 2;
  std::vector<BlockLevel> levels;

  std::size_t depth() const noexcept { return levels.empty() ? 0 : levels.size() - 1; }

  friend bool operator==(const BlockStructure&, const BlockStructure&) = default;
};

inline std::size_t default_base(std::size_t n) {
  const double lg = n > 1 ? std::log2(static_cast<double>(n)) : 0.0;
  const auto b = static_cast<std::size_t>(std::llround(std::exp2(std::sqrt(lg))));
  return std::max<std::size_t>(2, b);
}

/// ceil(n / b^i) for i = 0, 1, ... up to and including the first 1.
inline std::vector<std::size_t> block_lengths(std::size_t n, std::size_t base) {
  std::vector<std::size_t> lens{n};
  while (lens.back() > 1) lens.push_back((lens.back() + base - 1) / base);
  return lens;
}

namespace detail {

// First occurrence of every length-`len` window, keyed by a polynomial hash
// mod 2^61 - 1. Hits are verified byte-wise; a collision falls back to a scan.
class FirstOccurrence {
 public:
  FirstOccurrence(TextView s, std::size_t len) : s_(s), len_(len) {
    const std::size_t n = s.size();
    prefix_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
      prefix_[i + 1] = add(mul(prefix_[i], kRadix), static_cast<std::uint8_t>(s[i]) + 1);
    power_ = 1;
    for (std::size_t k = 0; k < len; ++k) power_ = mul(power_, kRadix);
    if (len == 0 || len > n) return;
    first_.reserve(n - len + 1);
    for (std::size_t i = 0; i + len <= n; ++i) first_.try_emplace(window(i), i);
  }

  // 0-based start of the first occurrence of s[lo, lo + len).
  std::size_t find(std::size_t lo, std::size_t len) const {
    const TextView block = s_.substr(lo, len);
    if (len == len_) {
      auto it = first_.find(window(lo));
      if (it != first_.end() && s_.substr(it->second, len) == block) return it->second;
    }
    return s_.find(block);
  }

 private:
  static constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
  static constexpr std::uint64_t kRadix = 1000003;

  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    const std::uint64_t lo = static_cast<std::uint64_t>(p & kMod);
    const std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
    std::uint64_t r = lo + hi;
    if (r >= kMod) r -= kMod;
    return r;
  }
  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    if (r >= kMod) r -= kMod;
    return r;
  }
  std::uint64_t window(std::size_t i) const {
    return add(prefix_[i + len_], kMod - mul(prefix_[i], power_));
  }

  TextView s_;
  std::size_t len_;
  std::vector<std::uint64_t> prefix_;
  std::uint64_t power_ = 1;
  std::unordered_map<std::uint64_t, std::size_t> first_;
};

}  // namespace detail

/// Builds the block structure. Only blocks some access descent can visit are
/// retained unless `prune` is false. Reachability runs level by level from
/// the single level-0 block: a block with pointer p and length k reaches the
/// next-level blocks covering positions p .. p + k - 1.
inline BlockStructure build_block_structure(TextView s, std::size_t base, bool prune = true) {
  if (s.empty()) throw error(errc::empty_input, "cannot index an empty text");
  if (base < 2) throw error(errc::bad_base, "base must be at least 2");

  const std::size_t n = s.size();
  BlockStructure bs;
  bs.n = n;
  bs.base = base;
  const auto lens = block_lengths(n, base);

  std::vector<std::size_t> retained{0};
  for (std::size_t i = 0; i < lens.size(); ++i) {
    const std::size_t len = lens[i];
    const std::size_t blocks = (n + len - 1) / len;
    if (!prune) {
      retained.resize(blocks);
      for (std::size_t j = 0; j < blocks; ++j) retained[j] = j;
    }
    BlockLevel level;
    level.block_length = len;
    level.index = retained;
    level.value.reserve(retained.size());

    if (len == 1) {
      for (std::size_t j : retained) level.value.push_back(static_cast<std::uint8_t>(s[j]));
      bs.levels.push_back(std::move(level));
      break;
    }

    const detail::FirstOccurrence finder(s, len);
    const std::size_t next_len = lens[i + 1];
    std::vector<std::pair<std::size_t, std::size_t>> reach;  // inclusive next-level intervals
    reach.reserve(retained.size());
    for (std::size_t j : retained) {
      const std::size_t lo = j * len;
      const std::size_t k = std::min(len, n - lo);
      const std::size_t p = finder.find(lo, k);  // 0-based
      level.value.push_back(p + 1);
      reach.push_back({p / next_len, (p + k - 1) / next_len});
    }
    bs.levels.push_back(std::move(level));

    std::sort(reach.begin(), reach.end());
    retained.clear();
    for (auto [a, b] : reach) {
      std::size_t from = retained.empty() ? a : std::max(a, retained.back() + 1);
      for (std::size_t j = from; j <= b; ++j) retained.push_back(j);
    }
  }
  return bs;
}

inline BlockStructure build_block_structure(TextView s) {
  return build_block_structure(s, default_base(s.size()));
}

struct AccessTrace {
  std::uint8_t byte = 0;
  std::size_t transitions = 0;
};

/// s[pos] for 1-based pos, descending one level per step: with pointer p and
/// offset off, position q = p + off holds the same byte, and it lies in
/// next-level block (q - 1) / len at offset (q - 1) % len.
inline AccessTrace access_traced(const BlockStructure& bs, std::size_t pos) {
  if (pos < 1 || pos > bs.n)
    throw error(errc::out_of_range, "position " + std::to_string(pos) + " outside [1, " +
                                        std::to_string(bs.n) + "]");
  AccessTrace trace;
  std::size_t block = 0;
  std::size_t offset = pos - 1;
  for (std::size_t i = 0; i < bs.levels.size(); ++i) {
    const BlockLevel& level = bs.levels[i];
    const std::uint64_t* v = level.find(block);
    if (v == nullptr)
      throw error(errc::malformed_format, "descent reached a block that was not retained");
    if (level.block_length == 1) {
      trace.byte = static_cast<std::uint8_t>(*v);
      return trace;
    }
    if (i + 1 >= bs.levels.size()) break;
    const std::size_t q = static_cast<std::size_t>(*v) + offset;
    const std::size_t next_len = bs.levels[i + 1].block_length;
    block = (q - 1) / next_len;
    offset = (q - 1) % next_len;
    ++trace.transitions;
  }
  throw error(errc::malformed_format, "block structure has no unit level");
}

inline std::uint8_t access(const BlockStructure& bs, std::size_t pos) {
  return access_traced(bs, pos).byte;
}

inline Text extract(const BlockStructure& bs, std::size_t pos, std::size_t len) {
  if (len == 0) return {};
  if (pos < 1 || pos > bs.n || len > bs.n - pos + 1)
    throw error(errc::out_of_range, "range outside the text");
  Text out;
  out.reserve(len);
  for (std::size_t k = 0; k < len; ++k) out.push_back(static_cast<char>(access(bs, pos + k)));
  return out;
}

struct RaSizeReport {
  std::vector<std::size_t> retained_per_level;
  std::size_t retained_blocks = 0;
  std::size_t pointers = 0;
  /// Each record is its block index plus either a pointer or a byte, with
  /// fixed-width fields per level.
  std::size_t estimated_bits = 0;
};

inline RaSizeReport ra_size_report(const BlockStructure& bs) {
  auto bits_for = [](std::size_t values) {
    return values <= 1 ? std::size_t{1} : static_cast<std::size_t>(std::bit_width(values - 1));
  };
  RaSizeReport r;
  for (const BlockLevel& level : bs.levels) {
    const std::size_t count = level.index.size();
    const std::size_t blocks = (bs.n + level.block_length - 1) / level.block_length;
    r.retained_per_level.push_back(count);
    r.retained_blocks += count;
    const std::size_t value_bits = level.block_length > 1 ? bits_for(bs.n + 1) : 8;
    if (level.block_length > 1) r.pointers += count;
    r.estimated_bits += count * (bits_for(blocks) + value_bits);
  }
  return r;
}

// RA file format:
//   RABLOCK v1 n=<n> b=<b> levels=<L+1>
//   LEVEL <i> len=<len_i> blocks=<count>
//   <j> <pointer or byte>     (j ascending)
inline void write_block_structure(std::ostream& os, const BlockStructure& bs) {
  os << "RABLOCK v1 n=" << bs.n << " b=" << bs.base << " levels=" << bs.levels.size() << '\n';
  for (std::size_t i = 0; i < bs.levels.size(); ++i) {
    const BlockLevel& level = bs.levels[i];
    os << "LEVEL " << i << " len=" << level.block_length << " blocks=" << level.index.size()
       << '\n';
    for (std::size_t k = 0; k < level.index.size(); ++k)
      os << level.index[k] << ' ' << level.value[k] << '\n';
  }
}

inline BlockStructure read_block_structure(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) detail::malformed("missing RABLOCK header");
  auto head = detail::split_fields(line);
  BlockStructure bs;
  std::size_t level_count = 0;
  if (head.size() != 5 || head[0] != "RABLOCK" || head[1] != "v1" ||
      !detail::parse_keyed(head[2], "n=", bs.n) || !detail::parse_keyed(head[3], "b=", bs.base) ||
      !detail::parse_keyed(head[4], "levels=", level_count))
    detail::malformed("bad RABLOCK header: " + line);
  if (bs.n == 0 || bs.base < 2) detail::malformed("RABLOCK needs n >= 1 and b >= 2");
  const auto lens = block_lengths(bs.n, bs.base);
  if (level_count != lens.size()) detail::malformed("level count does not match n and b");

  for (std::size_t i = 0; i < lens.size(); ++i) {
    if (!std::getline(is, line)) detail::malformed("missing LEVEL " + std::to_string(i));
    auto f = detail::split_fields(line);
    std::size_t idx = 0;
    std::size_t len = 0;
    std::size_t count = 0;
    if (f.size() != 4 || f[0] != "LEVEL" || !detail::parse_size(f[1], idx) || idx != i ||
        !detail::parse_keyed(f[2], "len=", len) || len != lens[i] ||
        !detail::parse_keyed(f[3], "blocks=", count))
      detail::malformed("bad LEVEL line: " + line);
    const std::size_t blocks = (bs.n + len - 1) / len;
    if (count > blocks) detail::malformed("more retained blocks than blocks");
    BlockLevel level;
    level.block_length = len;
    for (std::size_t k = 0; k < count; ++k) {
      if (!std::getline(is, line)) detail::malformed("truncated level " + std::to_string(i));
      auto r = detail::split_fields(line);
      std::size_t j = 0;
      std::size_t v = 0;
      if (r.size() != 2 || !detail::parse_size(r[0], j) || !detail::parse_size(r[1], v) ||
          j >= blocks || (!level.index.empty() && j <= level.index.back()))
        detail::malformed("bad block record: " + line);
      if (len == 1 ? v > 255 : (v < 1 || v + std::min(len, bs.n - j * len) - 1 > bs.n))
        detail::malformed("block value out of range: " + line);
      level.index.push_back(j);
      level.value.push_back(v);
    }
    bs.levels.push_back(std::move(level));
  }
  return bs;
}

}  // namespace lzgram
