#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "common.hpp"
#include "lz77.hpp"

namespace lzgram {

/// Read-only sequential tape over a text. The head moves one cell per step;
/// a seek is a run of unit moves and is charged as such. A reversal is
/// counted whenever the direction of movement flips.
class Tape {
 public:
  explicit Tape(TextView contents) : contents_(contents) {}

  std::size_t head() const noexcept { return head_; }
  std::size_t size() const noexcept { return contents_.size(); }
  std::uint64_t reversal_count() const noexcept { return reversals_; }
  std::uint64_t step_count() const noexcept { return steps_; }

  void seek(std::size_t target) {
    if (target < 1 || target > contents_.size())
      throw error(errc::out_of_range, "tape seek outside the input");
    if (target == head_) return;
    const int dir = target > head_ ? 1 : -1;
    if (direction_ != 0 && dir != direction_) ++reversals_;
    direction_ = dir;
    steps_ += target > head_ ? target - head_ : head_ - target;
    head_ = target;
  }

  std::uint8_t read() const { return byte_at(contents_, head_); }

 private:
  TextView contents_;
  std::size_t head_ = 1;
  int direction_ = 0;
  std::uint64_t reversals_ = 0;
  std::uint64_t steps_ = 0;
};

/// The parser's entire position workspace. The register set is fixed at
/// compile time, so it cannot depend on the input; every write is tracked to
/// report the largest value ever held.
class RegisterFile {
 public:
  enum Reg : std::size_t { t, i, j, max_match, max_length, addr, kCount };

  std::size_t get(Reg r) const noexcept { return values_[r]; }
  void set(Reg r, std::size_t v) noexcept {
    values_[r] = v;
    if (v > max_value_) max_value_ = v;
  }

  static constexpr std::size_t count() noexcept { return kCount; }
  std::size_t max_value() const noexcept { return max_value_; }

 private:
  std::array<std::size_t, kCount> values_{};
  std::size_t max_value_ = 0;
};

struct TapeStats {
  std::uint64_t reversals = 0;
  std::uint64_t steps = 0;
  std::size_t registers = 0;
  std::size_t max_register = 0;
};

struct TapeRun {
  Parse parse;
  TapeStats stats;
};

/// Algorithm 1 with the input behind a Tape and all positions in a
/// RegisterFile. The byte under comparison lives in the finite control.
/// Output tokens go to a write-only stream that is not part of the workspace.
inline TapeRun run_tape_parser(TextView s) {
  using R = RegisterFile;
  const std::size_t n = s.size();
  Tape tape(s);
  RegisterFile reg;
  TapeRun run;

  reg.set(R::t, 1);
  while (reg.get(R::t) <= n) {
    reg.set(R::max_match, 0);
    reg.set(R::max_length, 0);
    for (reg.set(R::i, 1); reg.get(R::i) < reg.get(R::t); reg.set(R::i, reg.get(R::i) + 1)) {
      reg.set(R::j, 0);
      while (reg.get(R::i) + reg.get(R::j) < reg.get(R::t) &&
             reg.get(R::t) + reg.get(R::j) <= n) {
        reg.set(R::addr, reg.get(R::i) + reg.get(R::j));
        tape.seek(reg.get(R::addr));
        const std::uint8_t c = tape.read();
        reg.set(R::addr, reg.get(R::t) + reg.get(R::j));
        tape.seek(reg.get(R::addr));
        if (tape.read() != c) break;
        reg.set(R::j, reg.get(R::j) + 1);
      }
      if (reg.get(R::j) > reg.get(R::max_length)) {
        reg.set(R::max_match, reg.get(R::i));
        reg.set(R::max_length, reg.get(R::j));
      }
    }
    if (reg.get(R::max_length) <= 1) {
      tape.seek(reg.get(R::t));
      run.parse.tokens.push_back(PhraseToken::literal(tape.read()));
      reg.set(R::t, reg.get(R::t) + 1);
    } else {
      run.parse.tokens.push_back(
          PhraseToken::copy(reg.get(R::max_match), reg.get(R::max_length)));
      reg.set(R::t, reg.get(R::t) + reg.get(R::max_length));
    }
  }

  run.stats.reversals = tape.reversal_count();
  run.stats.steps = tape.step_count();
  run.stats.registers = RegisterFile::count();
  run.stats.max_register = reg.max_value();
  return run;
}

}  // namespace lzgram
