#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "bisection.hpp"
#include "cnf.hpp"
#include "lz77.hpp"
#include "refine.hpp"

namespace lzgram {

enum class Method { best, lz77cnf, bisection };

inline std::optional<Method> method_from_name(std::string_view name) {
  if (name == "best") return Method::best;
  if (name == "lz77cnf") return Method::lz77cnf;
  if (name == "bisection") return Method::bisection;
  return std::nullopt;
}

/// Intermediate products of the LZ77 route, kept for reporting.
struct Lz77CnfResult {
  Parse parse;
  Parse broken;
  CnfConversion cnf;
};

inline Lz77CnfResult lz77_cnf_pipeline(TextView s) {
  if (s.empty()) throw error(errc::empty_input, "cannot compress an empty text");
  Lz77CnfResult r;
  r.parse = parse_lz77(s);
  r.broken = break_phrases(r.parse);
  r.cnf = to_cnf_detailed(grammar_from_parse(r.broken));
  return r;
}

/// Builds a CNF grammar for `s`; Method::best keeps the smaller of the two
/// constructions, preferring lz77cnf on ties.
inline Grammar compress(TextView s, Method method) {
  switch (method) {
    case Method::lz77cnf:
      return lz77_cnf_pipeline(s).cnf.grammar;
    case Method::bisection:
      return bisection_grammar(s);
    case Method::best:
      break;
  }
  Grammar via_lz = lz77_cnf_pipeline(s).cnf.grammar;
  Grammar via_bis = bisection_grammar(s);
  return grammar_size(via_bis) < grammar_size(via_lz) ? std::move(via_bis) : std::move(via_lz);
}

/// Stage sizes for one input. The LZ77 phrase count lower-bounds the
/// smallest grammar, so best_size / lz77_phrases upper-bounds the
/// approximation ratio actually achieved on this input.
struct Certificate {
  std::size_t lz77_phrases = 0;
  std::size_t broken_phrases = 0;
  std::size_t cnf_size = 0;
  std::size_t bisection_size = 0;
  std::size_t best_size = 0;

  double ratio_upper_bound() const noexcept {
    return static_cast<double>(best_size) / static_cast<double>(lz77_phrases);
  }
};

inline Certificate make_certificate(TextView s) {
  if (s.empty()) throw error(errc::empty_input, "certificate needs a non-empty text");
  const auto lz = lz77_cnf_pipeline(s);
  Certificate c;
  c.lz77_phrases = phrase_count(lz.parse);
  c.broken_phrases = phrase_count(lz.broken);
  c.cnf_size = grammar_size(lz.cnf.grammar);
  c.bisection_size = grammar_size(bisection_grammar(s));
  c.best_size = std::min(c.cnf_size, c.bisection_size);
  return c;
}

}  // namespace lzgram
