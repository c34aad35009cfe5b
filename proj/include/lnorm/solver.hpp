#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lnorm/error.hpp"
#include "lnorm/graycode.hpp"
#include "lnorm/matrix.hpp"
#include "lnorm/preprocess.hpp"
#include "lnorm/work_range.hpp"

namespace lnorm {

using Value = std::int64_t;

/// Marks "no candidate seen", e.g. the result of scanning an empty range.
inline constexpr Value kNoValue = std::numeric_limits<Value>::min();
inline constexpr gray::Word kNoWord = std::numeric_limits<gray::Word>::max();

/// Per-row choice: a sign (±1) in L1/MARG, a message label 0..d-1 in LD.
/// Row 0 is the fixed entry (+1, resp. label 0) for enumerated strategies.
struct StrategyVector {
  SolveMode mode = SolveMode::l1();
  std::vector<int> entries;

  friend bool operator==(const StrategyVector&, const StrategyVector&) = default;
};

inline int entry_for_digit(SolveMode mode, unsigned digit) noexcept {
  return mode.is_signed() ? 2 * static_cast<int>(digit) - 1 : static_cast<int>(digit);
}

inline int fixed_entry(SolveMode mode) noexcept { return mode.is_signed() ? 1 : 0; }

/// Row x >= 1 takes Gray digit x-1; row 0 is fixed.
inline StrategyVector strategy_for_word(SolveMode mode, const gray::GrayWord& word) {
  StrategyVector s{mode, std::vector<int>(word.h + 1)};
  s.entries[0] = fixed_entry(mode);
  for (std::size_t i = 0; i < word.h; ++i) s.entries[i + 1] = entry_for_digit(mode, word.digits[i]);
  return s;
}

/// Running vectors for one strategy.
///
/// L1/MARG keep a single vector m = aM (groups() == 1); LD keeps one vector
/// per label, m_a = sum of the rows carrying label a, plus each group's
/// Manhattan norm.
struct RunningState {
  SolveMode mode = SolveMode::l1();
  std::size_t cols = 0;
  std::vector<Value> vectors;      // groups() x cols, group-major
  std::vector<Value> group_norms;  // Manhattan norm of each vector
  Value value = 0;
  gray::Word j = kNoWord;          // word this state belongs to, kNoWord if none
  std::vector<int> strategy;

  std::size_t groups() const noexcept { return group_norms.size(); }
  std::span<const Value> vector(std::size_t group) const noexcept {
    return {vectors.data() + group * cols, cols};
  }

  friend bool operator==(const RunningState&, const RunningState&) = default;
};

namespace detail {

inline Value manhattan(std::span<const Value> v) noexcept {
  Value s = 0;
  for (auto x : v) s += x < 0 ? -x : x;
  return s;
}

inline Value signed_value(SolveMode mode, std::span<const Value> m, Value norm) noexcept {
  if (mode.kind() == SolveMode::Kind::Marg && !m.empty()) {
    // first column enters unsigned: m_1 + sum_{y>=2} |m_y|
    const Value head = m[0] < 0 ? -m[0] : m[0];
    return norm - head + m[0];
  }
  return norm;
}

}  // namespace detail

/// Full vector-matrix accumulation for an arbitrary strategy.
///
/// L1 accepts either sign for row 0 (values are negation invariant); LD
/// entries must lie in 0..d-1. The returned state has j = kNoWord.
inline RunningState value_from_scratch(const IntMatrix& M, SolveMode mode, std::span<const int> strategy) {
  if (strategy.size() != M.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "strategy has " + std::to_string(strategy.size()) +
                                                  " entries for a matrix with " + std::to_string(M.rows()) + " rows");
  }
  for (std::size_t x = 0; x < strategy.size(); ++x) {
    const int a = strategy[x];
    const bool ok = mode.is_signed() ? (a == 1 || a == -1) : (a >= 0 && static_cast<unsigned>(a) < mode.radix());
    if (!ok) throw Error(ErrorCode::InvalidMode, "strategy entry " + std::to_string(a) + " at row " +
                                                     std::to_string(x + 1) + " is outside the alphabet");
  }
  if (mode.kind() == SolveMode::Kind::Marg && !strategy.empty() && strategy[0] != 1) {
    throw Error(ErrorCode::InvalidMode, "MARG strategies fix the first entry to +1");
  }

  RunningState st;
  st.mode = mode;
  st.cols = M.cols();
  st.strategy.assign(strategy.begin(), strategy.end());
  const std::size_t groups = mode.is_signed() ? 1 : mode.radix();
  st.vectors.assign(groups * st.cols, 0);
  st.group_norms.assign(groups, 0);

  for (std::size_t x = 0; x < M.rows(); ++x) {
    const auto row = M.row(x);
    if (mode.is_signed()) {
      for (std::size_t y = 0; y < st.cols; ++y) st.vectors[y] += strategy[x] * row[y];
    } else {
      Value* dst = st.vectors.data() + static_cast<std::size_t>(strategy[x]) * st.cols;
      for (std::size_t y = 0; y < st.cols; ++y) dst[y] += row[y];
    }
  }
  for (std::size_t a = 0; a < groups; ++a) st.group_norms[a] = detail::manhattan(st.vector(a));
  if (mode.is_signed()) {
    st.value = detail::signed_value(mode, st.vector(0), st.group_norms[0]);
  } else {
    st.value = 0;
    for (auto g : st.group_norms) st.value += g;
  }
  return st;
}

/// Changes the entry of one row and updates the running vectors in O(m).
///
/// Signed modes: m_y += 2 a_new M_{row,y}. LD: the row leaves group `old`
/// and joins group `entry`, and only those two group norms are recomputed.
inline void apply_change(const IntMatrix& M, RunningState& st, std::size_t row, int entry) {
  const int old = st.strategy[row];
  if (old == entry) return;
  const auto r = M.row(row);
  if (st.mode.is_signed()) {
    const Value twice = 2 * entry;
    Value* m = st.vectors.data();
    Value norm = 0;
    for (std::size_t y = 0; y < st.cols; ++y) {
      m[y] += twice * r[y];
      norm += m[y] < 0 ? -m[y] : m[y];
    }
    st.group_norms[0] = norm;
    st.value = detail::signed_value(st.mode, st.vector(0), norm);
  } else {
    Value* from = st.vectors.data() + static_cast<std::size_t>(old) * st.cols;
    Value* to = st.vectors.data() + static_cast<std::size_t>(entry) * st.cols;
    Value norm_from = 0, norm_to = 0;
    for (std::size_t y = 0; y < st.cols; ++y) {
      from[y] -= r[y];
      to[y] += r[y];
      norm_from += from[y] < 0 ? -from[y] : from[y];
      norm_to += to[y] < 0 ? -to[y] : to[y];
    }
    st.value += norm_from - st.group_norms[old] + norm_to - st.group_norms[entry];
    st.group_norms[old] = norm_from;
    st.group_norms[entry] = norm_to;
  }
  st.strategy[row] = entry;
}

namespace detail {

inline void advance(const IntMatrix& M, const gray::RadixPowers& pow, RunningState& st, gray::Word j) {
  const unsigned d = pow.radix();
  const unsigned i = d == 2 ? gray::brgc_change_index(j) : gray::dary_change_index(d, j);
  const unsigned digit = gray::dary_digit(pow, i, j);
  apply_change(M, st, i + 1, entry_for_digit(st.mode, digit));
  st.j = j;
}

}  // namespace detail

/// Number of Gray words enumerated for M under `mode`: radix^(rows-1).
inline gray::RadixPowers word_space(const IntMatrix& M, SolveMode mode) {
  return gray::RadixPowers(mode.radix(), M.rows() == 0 ? 0 : M.rows() - 1);
}

/// Running state for Gray word j, built from scratch.
inline RunningState state_at_word(const IntMatrix& M, SolveMode mode, const gray::RadixPowers& pow, gray::Word j) {
  const auto s = strategy_for_word(mode, gray::word_at(pow, j));
  auto st = value_from_scratch(M, mode, s.entries);
  st.j = j;
  return st;
}

/// Advances `st` from word j-1 to word j.
inline void step(const IntMatrix& M, const gray::RadixPowers& pow, RunningState& st, gray::Word j) {
  if (st.j == kNoWord || st.j + 1 != j) {
    throw Error(ErrorCode::NonConsecutiveStep,
                "state is at word " + (st.j == kNoWord ? std::string("<none>") : std::to_string(st.j)) +
                    ", cannot step to " + std::to_string(j));
  }
  if (j >= pow.period()) {
    throw Error(ErrorCode::IndexOutOfRange, "word " + std::to_string(j) + " outside the enumeration");
  }
  detail::advance(M, pow, st, j);
}

inline void step(const IntMatrix& M, RunningState& st, gray::Word j) { step(M, word_space(M, st.mode), st, j); }

struct ScanResult {
  Value value = kNoValue;
  gray::Word argmax = 0;
  StrategyVector strategy;

  bool empty() const noexcept { return value == kNoValue; }
};

/// Scans the words of `range` in Gray order and returns the maximum value,
/// attained first at the smallest word index.
inline ScanResult scan_range(const IntMatrix& M, SolveMode mode, const gray::RadixPowers& pow, WorkRange range) {
  if (range.empty()) return {};
  if (M.empty()) return {0, 0, {mode, {}}};
  if (static_cast<gray::Word>(range.last) >= pow.period()) {
    throw Error(ErrorCode::IndexOutOfRange, "range end " + std::to_string(range.last) + " outside [0, " +
                                                std::to_string(pow.period()) + ")");
  }
  auto st = state_at_word(M, mode, pow, range.first);
  ScanResult best{st.value, range.first, {}};
  const auto last = static_cast<gray::Word>(range.last);
  for (gray::Word j = range.first + 1; j <= last; ++j) {
    detail::advance(M, pow, st, j);
    if (st.value > best.value) {
      best.value = st.value;
      best.argmax = j;
    }
  }
  best.strategy = strategy_for_word(mode, gray::word_at(pow, best.argmax));
  return best;
}

inline ScanResult scan_range(const IntMatrix& M, SolveMode mode, WorkRange range) {
  return scan_range(M, mode, word_space(M, mode), range);
}

/// Outcome of a full solve.
struct NormResult {
  SolveMode mode = SolveMode::l1();  // mode actually solved (see report.mode_downgraded)
  Value value = 0;
  gray::Word argmax = 0;
  StrategyVector strategy;
  PreprocessReport report;
  unsigned threads = 1;

  unsigned d() const noexcept { return mode.radix(); }
};

}  // namespace lnorm
