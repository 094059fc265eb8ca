// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "lzgram/lzgram.hpp"

using namespace lzgram;
using lzgram::testing::kWoodchuck;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<std::string>& corpus() {
  static const auto c = lzgram::testing::make_corpus(1000, 2000);
  return c;
}

std::vector<std::string> binary_strings_up_to(std::size_t max_len) {
  std::vector<std::string> out;
  for (std::size_t len = 1; len <= max_len; ++len)
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      std::string s(len, 'a');
      for (std::size_t k = 0; k < len; ++k)
        if (bits >> k & 1) s[k] = 'b';
      out.push_back(s);
    }
  return out;
}

std::map<std::pair<std::size_t, std::size_t>, NonterminalId> ids_by_range(const CnfConversion& c) {
  std::map<std::pair<std::size_t, std::size_t>, NonterminalId> id;
  for (NonterminalId k = 1; k < c.ranges.size(); ++k) id.emplace(c.ranges[k], k);
  return id;
}

Outcome ac1_woodchuck_parse() {
  Outcome o;
  const auto t0 = Clock::now();
  const Parse p = parse_lz77(kWoodchuck);
  const Parse naive = parse_lz77_naive(kWoodchuck);
  const double elapsed = seconds_since(t0);
  o.require(render_parse(p) ==
                "how-much-wood(9,3)ul(13,2)a(9,5)(7,2)(6,2)k-(27,6)if(20,14)(16,5)(27,6)(10,4)?",
            "rendered parse differs: " + render_parse(p));
  o.require(phrase_count(p) == 31, "phrase count " + std::to_string(phrase_count(p)));
  o.require(p == naive, "fast parser disagrees with Algorithm 1");
  o.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = "31 phrases in " + std::to_string(elapsed * 1e3) + " ms";
  return o;
}

Outcome ac2_woodchuck_breaks() {
  Outcome o;
  const Parse original = parse_lz77(kWoodchuck);
  const Parse broken = break_phrases(original);
  o.require(phrase_count(broken) == 35, "phrase count " + std::to_string(phrase_count(broken)));

  // Each new break, described as the two pieces it cuts its original phrase into.
  const auto orig_starts = original.starts();
  const auto new_starts = broken.starts();
  const std::set<std::size_t> old_set(orig_starts.begin(), orig_starts.end());
  const std::set<std::size_t> all(new_starts.begin(), new_starts.end());
  std::set<std::pair<std::string, std::string>> cuts;
  for (std::size_t p : all) {
    if (old_set.count(p)) continue;
    const auto at = all.find(p);
    const std::size_t prev_break = *std::prev(at);
    const std::size_t next_break = *std::next(at);
    cuts.insert({kWoodchuck.substr(prev_break - 1, p - prev_break),
                 kWoodchuck.substr(p - 1, next_break - p)});
  }
  const std::set<std::pair<std::string, std::string>> want{
      {"-w", "o"}, {"d", "-"}, {"c", "h"}, {"c", "huck-"}};
  o.require(cuts == want, "new breaks differ from the four expected");

  const Grammar g = grammar_from_parse(broken);
  auto run = [](NonterminalId a, NonterminalId b) {
    Rhs rhs;
    for (NonterminalId x = a; x <= b; ++x) rhs.push_back(Symbol::nonterm(x));
    return rhs;
  };
  o.require(g.rules[14] == run(9, 10), "X_14 != X_9 X_10");
  o.require(g.rules[31] == run(19, 27), "X_31 != X_19 .. X_27");
  o.require(g.rules[34] == run(10, 13), "X_34 != X_10 .. X_13");
  if (o.pass) o.detail = "35 phrases, breaks -w|o d|- c|h c|huck-";
  return o;
}

Outcome ac3_woodchuck_cnf() {
  Outcome o;
  const CnfConversion c = to_cnf_detailed(grammar_from_parse(break_phrases(parse_lz77(kWoodchuck))));
  o.require(c.tree_sizes == std::vector<std::size_t>{32, 2, 1}, "forest is not 32, 2, 1");
  const auto id = ids_by_range(c);
  auto X = [&](std::size_t a, std::size_t b) -> Symbol {
    auto it = id.find({a, b});
    return it == id.end() ? Symbol::term(0) : Symbol::nonterm(it->second);
  };
  const Grammar& g = c.grammar;
  o.require(g.rules[0] == Rhs{X(1, 32), X(33, 35)}, "X_0 != X_{1,32} X_{33,35}");
  o.require(id.count({1, 32}) && g.rules[id.at({1, 32})] == Rhs{X(1, 16), X(17, 32)},
            "X_{1,32} != X_{1,16} X_{17,32}");
  o.require(is_cnf(g), "result is not in CNF");
  o.require(expand(g) == kWoodchuck, "expansion differs from the input");
  if (o.pass)
    o.detail = std::to_string(g.production_count()) + " productions, size " +
               std::to_string(grammar_size(g));
  return o;
}

Outcome ac4_phrase_lower_bound_sweep() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto strings = binary_strings_up_to(8);
  o.require(strings.size() == 510, "expected 510 strings");
  std::size_t tight = 0;
  for (const auto& s : strings) {
    const std::size_t z = phrase_count(parse_lz77(s));
    const std::size_t g = oracle::smallest_grammar_size(s);
    o.require(z <= g, s + ": " + std::to_string(z) + " phrases > smallest grammar " +
                          std::to_string(g));
    tight += (z == g);
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 600.0, "took " + std::to_string(elapsed) + " s");
  if (o.pass)
    o.detail = "510 strings, " + std::to_string(tight) + " tight, " + std::to_string(elapsed) + " s";
  return o;
}

Outcome ac5_roundtrip() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& s : corpus()) {
    for (Method m : {Method::best, Method::lz77cnf, Method::bisection}) {
      std::ostringstream os;
      write_grammar(os, compress(s, m));
      std::istringstream in(os.str());
      o.require(expand(read_grammar(in)) == s,
                "round trip failed for a text of length " + std::to_string(s.size()));
      ++checked;
    }
  }
  o.require(corpus().size() >= 1000, "corpus too small");
  if (o.pass) o.detail = std::to_string(checked) + " round trips, 0 failures";
  return o;
}

Outcome ac6_refinement_bound() {
  Outcome o;
  double worst = 0;
  for (const auto& s : corpus()) {
    const Parse p = parse_lz77(s);
    const Parse b = break_phrases(p);
    const std::size_t z = phrase_count(p);
    o.require(phrase_count(b) <= z * z, "refined count exceeds the square");
    o.require(check_alignment(b), "refined parse is not aligned");
    o.require(verify_refinement(p, b), "break closure check failed");
    worst = std::max(worst, static_cast<double>(phrase_count(b)) / static_cast<double>(z * z));
  }
  if (o.pass) o.detail = "max broken/z^2 = " + std::to_string(worst);
  return o;
}

Outcome ac7_cnf_bound() {
  Outcome o;
  double worst = 0;
  for (const auto& s : corpus()) {
    const Grammar g = grammar_from_parse(break_phrases(parse_lz77(s)));
    const std::size_t m = g.rules.size() - 1;
    const Grammar cnf = to_cnf(g);
    o.require(cnf.production_count() <= cnf_production_bound(m),
              "production count over 4m(ceil(log2 m)+2) for m=" + std::to_string(m));
    o.require(is_cnf(cnf), "unit or non-CNF production present");
    worst = std::max(worst, static_cast<double>(cnf.production_count()) /
                                static_cast<double>(cnf_production_bound(m)));
  }
  if (o.pass) o.detail = "max productions/bound = " + std::to_string(worst);
  return o;
}

Outcome ac8_bisection() {
  Outcome o;
  o.require(grammar_size(bisection_grammar("abab")) == 6, "size(abab) != 6");
  o.require(grammar_size(bisection_grammar("aaaaaaaa")) == 7, "size(a^8) != 7");
  o.require(grammar_size(bisection_grammar("a")) == 1, "size(a) != 1");
  std::size_t checked = 0;
  for (const auto& s : corpus()) {
    if (s.size() > 64) continue;
    const auto all = expand_all(bisection_grammar(s));
    o.require(std::set<std::string>(all.begin(), all.end()).size() == all.size(),
              "two nonterminals share an expansion");
    o.require(all[0] == s, "bisection grammar does not expand to the input");
    ++checked;
  }
  if (o.pass) o.detail = std::to_string(checked) + " inputs with n <= 64 fully checked";
  return o;
}

Outcome ac9_random_access() {
  Outcome o;
  std::size_t texts = 0;
  std::size_t accesses = 0;
  for (std::size_t k = 0; k < corpus().size() && texts < 120; k += 8, ++texts) {
    const std::string& s = corpus()[k];
    for (std::size_t b : {std::size_t{2}, std::size_t{3}, std::size_t{4}, default_base(s.size())}) {
      std::size_t expected_depth = 0;
      for (std::size_t len = s.size(); len > 1; len = (len + b - 1) / b) ++expected_depth;
      const BlockStructure bs = build_block_structure(s, b);
      for (std::size_t pos = 1; pos <= s.size(); ++pos) {
        const AccessTrace t = access_traced(bs, pos);
        o.require(t.byte == static_cast<std::uint8_t>(s[pos - 1]), "wrong byte");
        o.require(t.transitions == expected_depth, "descent length differs from L");
        ++accesses;
      }
    }
  }
  o.require(texts >= 100, "fewer than 100 texts");
  const auto report = ra_size_report(build_block_structure(std::string(1024, 'a'), 4));
  for (std::size_t i = 1; i < report.retained_per_level.size(); ++i)
    o.require(report.retained_per_level[i] <= 4, "a^1024 level " + std::to_string(i) +
                                                     " retains more than 4 blocks");
  if (o.pass)
    o.detail = std::to_string(texts) + " texts, " + std::to_string(accesses) + " accesses";
  return o;
}

Outcome ac10_tape() {
  Outcome o;
  std::mt19937_64 rng(10);
  std::set<std::size_t> register_counts;
  for (std::size_t n : {100u, 1000u, 10000u}) {
    const std::string s = lzgram::testing::random_text(rng, 4, n);
    const TapeRun run = run_tape_parser(s);
    register_counts.insert(run.stats.registers);
    o.require(run.stats.max_register <= n + 1, "register exceeded n+1 at n=" + std::to_string(n));
    o.require(run.parse == parse_lz77(s), "tape parse differs at n=" + std::to_string(n));
  }
  o.require(register_counts.size() == 1, "register count varies with n");
  for (const auto& s : corpus()) {
    const TapeRun run = run_tape_parser(s);
    o.require(run.parse == parse_lz77(s), "tape parse differs on corpus input");
    o.require(run.stats.max_register <= s.size() + 1, "register exceeded n+1 on corpus input");
  }
  if (o.pass)
    o.detail = std::to_string(*register_counts.begin()) + " registers for n = 100, 1000, 10000";
  return o;
}

Outcome ac11_certificate() {
  Outcome o;
  std::string tiny;
  for (const auto& s : corpus()) {
    const Certificate c = make_certificate(s);
    o.require(c.best_size == std::min(c.cnf_size, c.bisection_size), "best_size is not the min");
    o.require(c.ratio_upper_bound() >= 1.0, "ratio bound below 1");
    if (s.size() <= oracle::kMaxExactLength) {
      const std::size_t g = oracle::smallest_grammar_size(s);
      char buf[96];
      std::snprintf(buf, sizeof buf, " %s:%.2f", s.c_str(),
                    static_cast<double>(c.best_size) / static_cast<double>(g));
      if (tiny.size() < 200) tiny += buf;
    }
  }
  if (o.pass) o.detail = "best/g on n<=8:" + tiny;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1  woodchuck LZ77 parse", ac1_woodchuck_parse},
      {"AC2  woodchuck phrase breaks + grammar", ac2_woodchuck_breaks},
      {"AC3  woodchuck CNF forest", ac3_woodchuck_cnf},
      {"AC4  LZ77 lower bound oracle sweep", ac4_phrase_lower_bound_sweep},
      {"AC5  compress/decompress round trip", ac5_roundtrip},
      {"AC6  refinement bound + alignment", ac6_refinement_bound},
      {"AC7  CNF production bound", ac7_cnf_bound},
      {"AC8  bisection exactness + dedup", ac8_bisection},
      {"AC9  random access", ac9_random_access},
      {"AC10 tape harness", ac10_tape},
      {"AC11 certificate soundness", ac11_certificate},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
