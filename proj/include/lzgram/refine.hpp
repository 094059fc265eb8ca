#pragma once

#include <cstddef>
#include <vector>

#include "lz77.hpp"

namespace lzgram {

namespace detail {

inline std::vector<bool> break_mask(const Parse& parse) {
  const auto starts = parse.starts();
  std::vector<bool> mask(starts.back() + 1, false);
  for (auto p : starts) mask[p] = true;
  return mask;
}

}  // namespace detail

/// True iff every copy's source range starts at a phrase start and ends at a
/// phrase end, i.e. each copy spans complete consecutive earlier phrases.
inline bool check_alignment(const Parse& parse) {
  const auto mask = detail::break_mask(parse);
  for (const auto& tok : parse.tokens) {
    if (!tok.is_copy()) continue;
    const std::size_t end = tok.source + tok.copy_length;
    if (tok.source == 0 || end >= mask.size()) return false;
    if (!mask[tok.source] || !mask[end]) return false;
  }
  return true;
}

/// Splits copy phrases until every copy's source is a run of whole phrases.
///
/// Copies are visited right to left. By then every break inside a copy is
/// final, since back-mapped breaks always land strictly to the left of the
/// copy that produced them. Each part of length >= 2 maps its two endpoints
/// into the source; parts of length 1 become literals and impose nothing.
/// The result has at most phrase_count(parse)^2 phrases.
inline Parse break_phrases(const Parse& parse) {
  validate_parse(parse);
  const Text text = decode_parse(parse);
  const auto starts = parse.starts();
  std::vector<bool> is_break = detail::break_mask(parse);

  for (std::size_t k = parse.tokens.size(); k-- > 0;) {
    const auto& tok = parse.tokens[k];
    if (!tok.is_copy()) continue;
    const std::size_t t = starts[k];
    const std::size_t end = t + tok.copy_length;
    std::size_t part_start = t;
    for (std::size_t p = t + 1; p <= end; ++p) {
      if (!is_break[p]) continue;
      if (p - part_start >= 2) {
        is_break[tok.source + (part_start - t)] = true;
        is_break[tok.source + (p - t)] = true;
      }
      part_start = p;
    }
  }

  Parse out;
  out.tokens.reserve(parse.tokens.size());
  for (std::size_t k = 0; k < parse.tokens.size(); ++k) {
    const auto& tok = parse.tokens[k];
    if (!tok.is_copy()) {
      out.tokens.push_back(tok);
      continue;
    }
    const std::size_t t = starts[k];
    const std::size_t end = t + tok.copy_length;
    std::size_t part_start = t;
    for (std::size_t p = t + 1; p <= end; ++p) {
      if (!is_break[p]) continue;
      if (p - part_start == 1)
        out.tokens.push_back(PhraseToken::literal(byte_at(text, part_start)));
      else
        out.tokens.push_back(PhraseToken::copy(tok.source + (part_start - t), p - part_start));
      part_start = p;
    }
  }
  return out;
}

/// Checks that `refined` is a valid refinement of `original`: same text, a
/// superset of the breaks, every part is the matching sub-copy (or the
/// literal it denotes), and every break inside an original copy that bounds
/// a part of length >= 2 maps back onto a break.
inline bool verify_refinement(const Parse& original, const Parse& refined) {
  if (decode_parse(original) != decode_parse(refined)) return false;
  const auto orig_mask = detail::break_mask(original);
  const auto ref_mask = detail::break_mask(refined);
  if (orig_mask.size() != ref_mask.size()) return false;
  for (std::size_t p = 0; p < orig_mask.size(); ++p)
    if (orig_mask[p] && !ref_mask[p]) return false;

  const auto orig_starts = original.starts();
  const auto ref_starts = refined.starts();
  std::size_t r = 0;
  for (std::size_t k = 0; k < original.tokens.size(); ++k) {
    const auto& tok = original.tokens[k];
    const std::size_t t = orig_starts[k];
    const std::size_t end = t + tok.length();
    for (; r < refined.tokens.size() && ref_starts[r] < end; ++r) {
      const auto& part = refined.tokens[r];
      if (!tok.is_copy()) {
        if (part != tok) return false;
        continue;
      }
      if (!part.is_copy()) continue;  // literal bytes are covered by the decode check
      if (part.source != tok.source + (ref_starts[r] - t)) return false;
      if (!ref_mask[part.source] || !ref_mask[part.source + part.copy_length]) return false;
    }
  }
  return check_alignment(refined);
}

}  // namespace lzgram
