#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "lnorm/graycode.hpp"
#include "lnorm/matrix.hpp"
#include "lnorm/preprocess.hpp"
#include "lnorm/solver.hpp"
#include "lnorm/work_range.hpp"

namespace lnorm {

/// Range of worker t out of T over C words: J = floor(C/T) words each, with
/// the R = C mod T leftover words going one apiece to the first R workers.
inline WorkRange partition(std::uint64_t total, unsigned workers, unsigned t) noexcept {
  const std::uint64_t share = total / workers;
  const std::uint64_t rest = total % workers;
  std::uint64_t first = t * share;
  // can be -1 when share == 0
  std::int64_t last = static_cast<std::int64_t>((t + 1) * share) - 1;
  if (t <= rest) {
    first += t;
  } else {
    first += rest;
  }
  if (t < rest) {
    last += static_cast<std::int64_t>(t) + 1;
  } else {
    last += static_cast<std::int64_t>(rest);
  }
  return {first, last, t};
}

/// Available hardware parallelism rounded down to a power of `radix`.
inline unsigned default_worker_count(unsigned radix) noexcept {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned t = 1;
  while (static_cast<std::uint64_t>(t) * radix <= hw) t *= radix;
  return t;
}

/// Deterministic reduction order: larger value wins, ties go to the smaller
/// word index.
inline bool better(const ScanResult& a, const ScanResult& b) noexcept {
  if (a.empty()) return false;
  if (b.empty()) return true;
  return a.value > b.value || (a.value == b.value && a.argmax < b.argmax);
}

/// Maximises over all radix^(rows-1) Gray words of an already-reduced
/// matrix using `workers` threads. The result does not depend on `workers`.
inline NormResult solve(const IntMatrix& M, SolveMode mode, unsigned workers) {
  workers = std::max(1u, workers);
  NormResult out;
  out.mode = mode;
  out.threads = workers;
  out.report.original_rows = out.report.final_rows = M.rows();
  out.report.original_cols = out.report.final_cols = M.cols();
  out.strategy.mode = mode;
  if (M.empty()) return out;

  const auto pow = word_space(M, mode);
  const std::uint64_t total = pow.period();

  std::vector<ScanResult> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned t) {
    try {
      partial[t] = scan_range(M, mode, pow, partition(total, workers, t));
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
      if (!partition(total, workers, t).empty()) pool.emplace_back(run, t);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  ScanResult best;
  for (auto& r : partial)
    if (better(r, best)) best = std::move(r);

  out.value = best.value;
  out.argmax = best.argmax;
  out.strategy = std::move(best.strategy);
  return out;
}

struct ComputeOptions {
  unsigned workers = 0;  // 0: default_worker_count
  bool preprocess = true;
};

/// Full pipeline: reduce, check word-size feasibility, solve.
inline NormResult compute(const IntMatrix& M, SolveMode mode, ComputeOptions opts = {}) {
  Preprocessed prep{M, {}};
  prep.report.original_rows = prep.report.final_rows = M.rows();
  prep.report.original_cols = prep.report.final_cols = M.cols();
  if (opts.preprocess) prep = preprocess(M, mode);

  const SolveMode solved = prep.report.solved_mode(mode);
  check_feasible(prep.matrix, solved, 64, opts.preprocess ? TransposePolicy::IfBeneficial : TransposePolicy::Never);

  const unsigned workers = opts.workers ? opts.workers : default_worker_count(solved.radix());
  auto result = solve(prep.matrix, solved, workers);
  result.report = std::move(prep.report);
  return result;
}

}  // namespace lnorm
