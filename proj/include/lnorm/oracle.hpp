#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lnorm/error.hpp"
#include "lnorm/matrix.hpp"
#include "lnorm/scheduler.hpp"
#include "lnorm/solver.hpp"

// Naive brute force. Shares no enumeration or accumulation code with the
// Gray-code path: strategies are visited in plain base-d counting order and
// each value is computed from the full matrix.

namespace lnorm::oracle {

/// Enumeration guard: radix^(rows-1) <= 2^28.
inline constexpr std::uint64_t kMaxStrategies = std::uint64_t{1} << 28;

/// Position of a digit vector (least significant first) in the d-ary
/// reflected Gray code. Decodes from the top digit down: a digit is read
/// mirrored whenever the prefix of word-index digits above it is odd.
inline std::uint64_t gray_rank(unsigned d, const std::vector<unsigned>& digits) {
  std::uint64_t prefix = 0;
  for (std::size_t k = digits.size(); k-- > 0;) {
    const unsigned g = digits[k];
    const unsigned v = (prefix & 1u) ? d - 1 - g : g;
    prefix = prefix * d + v;
  }
  return prefix;
}

/// Number of strategies enumerated for M; throws TooLargeForOracle past
/// kMaxStrategies.
inline std::uint64_t strategy_count(const IntMatrix& M, SolveMode mode) {
  const std::size_t free = M.empty() ? 0 : M.rows() - 1;
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < free; ++k) {
    count *= mode.radix();
    if (count > kMaxStrategies) {
      throw Error(ErrorCode::TooLargeForOracle, std::to_string(mode.radix()) + "^" + std::to_string(free) +
                                                    " strategies exceed the oracle limit of 2^28");
    }
  }
  return count;
}

/// Value of one strategy; `labels[x]` is the sign digit (0 -> -1, 1 -> +1)
/// for signed modes or the message label for LD.
inline std::int64_t evaluate(const IntMatrix& M, SolveMode mode, const std::vector<unsigned>& labels) {
  std::int64_t total = 0;
  if (mode.is_signed()) {
    for (std::size_t y = 0; y < M.cols(); ++y) {
      std::int64_t s = 0;
      for (std::size_t x = 0; x < M.rows(); ++x) s += labels[x] ? M(x, y) : -M(x, y);
      const bool unsigned_column = mode.kind() == SolveMode::Kind::Marg && y == 0;
      total += unsigned_column ? s : std::abs(s);
    }
    return total;
  }
  for (unsigned a = 0; a < mode.radix(); ++a) {
    for (std::size_t y = 0; y < M.cols(); ++y) {
      std::int64_t s = 0;
      for (std::size_t x = 0; x < M.rows(); ++x)
        if (labels[x] == a) s += M(x, y);
      total += std::abs(s);
    }
  }
  return total;
}

/// Exhaustive maximum with the first entry fixed (+1, resp. label 0). Ties
/// are broken towards the smallest Gray word index so results are directly
/// comparable with the scheduler.
inline NormResult solve(const IntMatrix& M, SolveMode mode) {
  NormResult out;
  out.mode = mode;
  out.strategy.mode = mode;
  out.report.original_rows = out.report.final_rows = M.rows();
  out.report.original_cols = out.report.final_cols = M.cols();
  if (M.empty()) return out;

  const unsigned d = mode.radix();
  const std::size_t free = M.rows() - 1;
  const std::uint64_t count = strategy_count(M, mode);

  // labels[0] is the fixed row: sign digit 1 (+1) or label 0.
  std::vector<unsigned> labels(M.rows(), 0);
  labels[0] = mode.is_signed() ? 1 : 0;
  std::vector<unsigned> free_digits(free);
  std::int64_t best = kNoValue;
  std::uint64_t best_rank = 0;
  std::vector<unsigned> best_labels;

  for (std::uint64_t k = 0; k < count; ++k) {
    std::uint64_t rest = k;
    for (std::size_t i = 0; i < free; ++i) {
      free_digits[i] = static_cast<unsigned>(rest % d);
      rest /= d;
      labels[i + 1] = free_digits[i];
    }
    const std::int64_t v = evaluate(M, mode, labels);
    if (v < best) continue;
    const std::uint64_t rank = gray_rank(d, free_digits);
    if (v > best || rank < best_rank) {
      best = v;
      best_rank = rank;
      best_labels = labels;
    }
  }

  out.value = best;
  out.argmax = best_rank;
  out.strategy.entries.resize(M.rows());
  for (std::size_t x = 0; x < M.rows(); ++x) {
    out.strategy.entries[x] = mode.is_signed() ? (best_labels[x] ? 1 : -1) : static_cast<int>(best_labels[x]);
  }
  return out;
}

/// Uniform random matrix with entries in [lo, hi].
inline IntMatrix random_matrix(std::size_t rows, std::size_t cols, std::int64_t lo, std::int64_t hi,
                               std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

struct BenchRow {
  std::size_t n = 0;
  double naive_ms = 0;
  double iterative_ms = 0;
  std::int64_t value = 0;
  bool agree = true;

  double ratio() const noexcept { return iterative_ms > 0 ? naive_ms / iterative_ms : 0; }
};

/// Times the naive oracle against the single-worker Gray-code solve on one
/// seeded random n x n matrix (entries in [-9, 9]), keeping the minimum of
/// `trials` runs per arm. L1 mode, no preprocessing.
inline BenchRow bench_pair(std::size_t n, unsigned trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * n));
  const IntMatrix M = random_matrix(n, n, -9, 9, rng);
  const SolveMode mode = SolveMode::l1();
  using clock = std::chrono::steady_clock;

  BenchRow row{n, 1e300, 1e300, 0, true};
  for (unsigned t = 0; t < std::max(1u, trials); ++t) {
    auto t0 = clock::now();
    const auto naive = solve(M, mode);
    auto t1 = clock::now();
    const auto iter = lnorm::solve(M, mode, 1);
    auto t2 = clock::now();
    row.naive_ms = std::min(row.naive_ms, std::chrono::duration<double, std::milli>(t1 - t0).count());
    row.iterative_ms = std::min(row.iterative_ms, std::chrono::duration<double, std::milli>(t2 - t1).count());
    row.value = iter.value;
    row.agree = row.agree && naive.value == iter.value && naive.argmax == iter.argmax;
  }
  return row;
}

}  // namespace lnorm::oracle
