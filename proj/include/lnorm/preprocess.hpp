#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lnorm/matrix.hpp"

namespace lnorm {

/// One norm-preserving reduction. Indices are 0-based and refer to the matrix
/// as it was immediately before the step, so a report can be replayed.
struct PreprocessStep {
  enum class Kind {
    RemovedZeroRow,         // first = row
    RemovedZeroCol,         // first = column
    MergedRows,             // row `second` = factor * row `first`; folded into `first`
    MergedCols,             // column `second` = factor * column `first`; folded into `first`
    MergedSignUniformCols,  // column `first` <- |first| + |second|
    Transposed,
  };

  Kind kind;
  std::size_t first = 0;
  std::size_t second = 0;
  // factor = numerator / denominator, reduced, denominator > 0
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  std::string describe() const {
    auto factor = [this] {
      return std::to_string(numerator) + (denominator == 1 ? "" : "/" + std::to_string(denominator));
    };
    switch (kind) {
      case Kind::RemovedZeroRow: return "removed zero row " + std::to_string(first + 1);
      case Kind::RemovedZeroCol: return "removed zero column " + std::to_string(first + 1);
      case Kind::MergedRows:
        return "merged row " + std::to_string(second + 1) + " into row " + std::to_string(first + 1) +
               " (factor " + factor() + ")";
      case Kind::MergedCols:
        return "merged column " + std::to_string(second + 1) + " into column " + std::to_string(first + 1) +
               " (factor " + factor() + ")";
      case Kind::MergedSignUniformCols:
        return "merged sign-uniform column " + std::to_string(second + 1) + " into column " +
               std::to_string(first + 1);
      case Kind::Transposed: return "transposed";
    }
    return "?";
  }

  friend bool operator==(const PreprocessStep&, const PreprocessStep&) = default;
};

struct PreprocessReport {
  std::vector<PreprocessStep> steps;
  std::size_t original_rows = 0;
  std::size_t original_cols = 0;
  std::size_t final_rows = 0;
  std::size_t final_cols = 0;
  /// MARG input whose first row and first column were both zero: they were
  /// stripped and the remainder is solved as an L1 problem.
  bool mode_downgraded = false;

  SolveMode solved_mode(SolveMode requested) const noexcept {
    return mode_downgraded ? SolveMode::l1() : requested;
  }
};

struct Preprocessed {
  IntMatrix matrix;
  PreprocessReport report;
};

namespace detail {

inline void fold_rows(IntMatrix& m, std::size_t keep, std::size_t drop, int sign) {
  auto dst = m.row(keep);
  auto src = m.row(drop);
  for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += sign * src[c];
  m.remove_row(drop);
}

inline void fold_cols(IntMatrix& m, std::size_t keep, std::size_t drop, int sign) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, keep) += sign * m(r, drop);
  m.remove_col(drop);
}

}  // namespace detail

/// Applies a single recorded step in place.
inline void apply_step(IntMatrix& m, const PreprocessStep& step) {
  using K = PreprocessStep::Kind;
  const int sign = step.numerator < 0 ? -1 : 1;
  switch (step.kind) {
    case K::RemovedZeroRow: m.remove_row(step.first); break;
    case K::RemovedZeroCol: m.remove_col(step.first); break;
    case K::MergedRows: detail::fold_rows(m, step.first, step.second, sign); break;
    case K::MergedCols: detail::fold_cols(m, step.first, step.second, sign); break;
    case K::MergedSignUniformCols:
      for (std::size_t r = 0; r < m.rows(); ++r) {
        m(r, step.first) = static_cast<std::int64_t>(IntMatrix::magnitude(m(r, step.first)) +
                                                     IntMatrix::magnitude(m(r, step.second)));
      }
      m.remove_col(step.second);
      break;
    case K::Transposed: m = m.transposed(); break;
  }
}

/// Replays a report's steps on the matrix it was produced from.
inline IntMatrix replay(IntMatrix m, const PreprocessReport& report) {
  for (const auto& step : report.steps) apply_step(m, step);
  return m;
}

/// If `other` is an exact rational multiple c·`ref` of a nonzero `ref`,
/// returns c as a reduced (numerator, denominator) pair. Uses integer
/// cross-multiplication only.
template <class LineA, class LineB>
std::optional<std::pair<std::int64_t, std::int64_t>> proportional_factor(const LineA& ref, const LineB& other) {
  const std::size_t len = ref.size();
  std::size_t pivot = len;
  for (std::size_t k = 0; k < len; ++k)
    if (ref[k] != 0) {
      pivot = k;
      break;
    }
  if (pivot == len || other[pivot] == 0) return std::nullopt;
  const i128 rp = ref[pivot];
  const i128 op = other[pivot];
  for (std::size_t k = 0; k < len; ++k)
    if (static_cast<i128>(ref[k]) * op != static_cast<i128>(other[k]) * rp) return std::nullopt;

  std::int64_t num = other[pivot];
  std::int64_t den = ref[pivot];
  // Entries stay below 2^62 in magnitude, so negation cannot overflow.
  if (den < 0) num = -num, den = -den;
  const std::int64_t g = std::gcd(num, den);
  return std::pair{num / g, den / g};
}

namespace detail {

struct Reducer {
  IntMatrix& m;
  PreprocessReport& report;
  SolveMode mode;

  bool marg() const { return mode.kind() == SolveMode::Kind::Marg; }

  void record(PreprocessStep step) {
    apply_step(m, step);
    report.steps.push_back(step);
  }

  bool remove_zero_line() {
    if (m.empty()) return false;
    if (marg() && m.row_is_zero(0) && m.col_is_zero(0)) {
      record({PreprocessStep::Kind::RemovedZeroRow, 0});
      if (!m.empty()) record({PreprocessStep::Kind::RemovedZeroCol, 0});
      report.mode_downgraded = true;
      mode = SolveMode::l1();
      return true;
    }
    const std::size_t lo = marg() ? 1 : 0;
    for (std::size_t r = lo; r < m.rows(); ++r)
      if (m.row_is_zero(r)) {
        record({PreprocessStep::Kind::RemovedZeroRow, r});
        return true;
      }
    for (std::size_t c = lo; c < m.cols(); ++c)
      if (m.col_is_zero(c)) {
        record({PreprocessStep::Kind::RemovedZeroCol, c});
        return true;
      }
    return false;
  }

  bool merge_proportional() {
    if (m.empty()) return false;
    const std::size_t lo = marg() ? 1 : 0;
    const bool negative_rows_ok = mode.kind() != SolveMode::Kind::LD;
    for (std::size_t a = lo; a < m.rows(); ++a)
      for (std::size_t b = a + 1; b < m.rows(); ++b)
        if (auto f = proportional_factor(m.row(a), m.row(b)); f && (f->first > 0 || negative_rows_ok)) {
          record({PreprocessStep::Kind::MergedRows, a, b, f->first, f->second});
          return true;
        }
    for (std::size_t a = lo; a < m.cols(); ++a) {
      const auto ref = m.column(a);
      for (std::size_t b = a + 1; b < m.cols(); ++b)
        if (auto f = proportional_factor(ref, m.column(b))) {
          record({PreprocessStep::Kind::MergedCols, a, b, f->first, f->second});
          return true;
        }
    }
    return false;
  }

  bool column_sign_uniform(std::size_t c) const {
    bool pos = false, neg = false;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      pos |= m(r, c) > 0;
      neg |= m(r, c) < 0;
    }
    return !(pos && neg);
  }

  bool merge_sign_uniform() {
    if (m.empty() || mode.kind() != SolveMode::Kind::LD) return false;
    std::optional<std::size_t> first;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!column_sign_uniform(c)) continue;
      if (!first) {
        first = c;
        continue;
      }
      record({PreprocessStep::Kind::MergedSignUniformCols, *first, c});
      return true;
    }
    return false;
  }
};

}  // namespace detail

/// Reduces `input` to a smaller matrix with the same norm under `mode`.
///
/// Rules run to a fixpoint in the order: zero lines, proportional pairs,
/// sign-uniform column pairs (LD only). In L1 mode the result is finally
/// transposed when it has more rows than columns. MARG keeps the first row
/// and first column in place unless both are entirely zero, in which case
/// both are dropped and the report is flagged as downgraded to L1.
inline Preprocessed preprocess(const IntMatrix& input, SolveMode mode) {
  Preprocessed out{input, {}};
  out.report.original_rows = input.rows();
  out.report.original_cols = input.cols();

  detail::Reducer reducer{out.matrix, out.report, mode};
  while (reducer.remove_zero_line() || reducer.merge_proportional() || reducer.merge_sign_uniform()) {
  }
  if (reducer.mode.kind() == SolveMode::Kind::L1 && out.matrix.rows() > out.matrix.cols()) {
    reducer.record({PreprocessStep::Kind::Transposed});
  }

  out.report.final_rows = out.matrix.rows();
  out.report.final_cols = out.matrix.cols();
  return out;
}

}  // namespace lnorm
