#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "lnorm/error.hpp"

namespace lnorm {

// 128-bit intermediates for overflow-free sums and cross products
__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;

/// Upper bound (exclusive) on the total absolute sum of a matrix. Every
/// running component and every candidate value is bounded by that sum, so
/// keeping it below 2^62 rules out signed 64-bit overflow in the kernels.
inline constexpr std::uint64_t kAbsSumLimit = std::uint64_t{1} << 62;

/// Dense row-major matrix of exact 64-bit integers.
///
/// A default or reduced matrix may have zero rows or zero columns; matrices
/// produced by parse_matrix or from_rows always have at least one of each.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {
    if (rows == 0 || cols == 0) rows_ = cols_ = 0, data_.clear();
  }

  /// Builds and validates a matrix from nested rows.
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    if (rows.empty() || rows.front().empty()) throw Error(ErrorCode::EmptyMatrix, "matrix has no entries");
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) {
        throw Error(ErrorCode::RaggedRows, "row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                                               " entries, expected " + std::to_string(m.cols_));
      }
      for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    m.check_abs_sum();
    return m;
  }
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<std::vector<std::int64_t>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  std::int64_t& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const std::int64_t> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<std::int64_t> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::int64_t> data() const noexcept { return data_; }

  std::vector<std::int64_t> column(std::size_t c) const {
    std::vector<std::int64_t> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  /// Σ|M_xy| as an unsigned quantity (INT64_MIN has no signed absolute value).
  std::uint64_t abs_sum() const noexcept {
    u128 sum = 0;
    for (auto v : data_) sum += magnitude(v);
    return sum > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(sum);
  }

  void check_abs_sum() const {
    if (abs_sum() >= kAbsSumLimit) {
      throw Error(ErrorCode::AbsSumOverflow, "total absolute sum must stay below 2^62");
    }
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void remove_row(std::size_t r) {
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    if (--rows_ == 0) cols_ = 0, data_.clear();
  }

  void remove_col(std::size_t c) {
    std::vector<std::int64_t> next;
    next.reserve(rows_ * (cols_ - 1));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < cols_; ++k)
        if (k != c) next.push_back((*this)(r, k));
    data_ = std::move(next);
    if (--cols_ == 0) rows_ = 0, data_.clear();
  }

  bool row_is_zero(std::size_t r) const noexcept {
    for (auto v : row(r))
      if (v != 0) return false;
    return true;
  }
  bool col_is_zero(std::size_t c) const noexcept {
    for (std::size_t r = 0; r < rows_; ++r)
      if ((*this)(r, c) != 0) return false;
    return true;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  static std::uint64_t magnitude(std::int64_t v) noexcept {
    return v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << '\n';
  }
  return os;
}

/// Parses whitespace-separated decimal integers, one matrix row per line.
/// Blank lines and lines whose first non-blank character is '#' are skipped.
inline IntMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<std::int64_t>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    auto first = line.find_first_not_of(" \t\r\f\v");
    if (first == std::string_view::npos || line[first] == '#') continue;

    std::vector<std::int64_t> row;
    std::size_t i = first;
    while (i < line.size()) {
      auto start = line.find_first_not_of(" \t\r\f\v", i);
      if (start == std::string_view::npos) break;
      auto stop = line.find_first_of(" \t\r\f\v", start);
      if (stop == std::string_view::npos) stop = line.size();
      std::string_view token = line.substr(start, stop - start);
      i = stop;

      std::string_view digits = token;
      if (digits.size() > 1 && digits.front() == '+') digits.remove_prefix(1);
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      const bool consumed = ptr == digits.data() + digits.size();
      if (ec == std::errc::result_out_of_range && consumed) {
        throw Error(ErrorCode::EntryOutOfRange,
                    "line " + std::to_string(line_no) + ": '" + std::string(token) + "' exceeds signed 64-bit range");
      }
      if (ec != std::errc{} || !consumed) {
        throw Error(ErrorCode::NonIntegerToken,
                    "line " + std::to_string(line_no) + ": '" + std::string(token) + "' is not a decimal integer");
      }
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::RaggedRows, "line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                                             " entries, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyMatrix, "no data lines");
  return IntMatrix::from_rows(rows);
}

inline IntMatrix parse_matrix(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.view());
}

/// Which norm is being maximised. LD carries the message alphabet size.
class SolveMode {
 public:
  enum class Kind { L1, Marg, LD };

  /// Label alphabets beyond this are rejected: a solve keeps d running
  /// vectors of length m alive at once.
  static constexpr unsigned kMaxAlphabet = 1u << 16;

  static constexpr SolveMode l1() noexcept { return SolveMode(Kind::L1, 2); }
  static constexpr SolveMode marg() noexcept { return SolveMode(Kind::Marg, 2); }
  static SolveMode ld(unsigned d) {
    if (d < 2 || d > kMaxAlphabet) {
      throw Error(ErrorCode::InvalidMode, "LD mode needs 2 <= d <= " + std::to_string(kMaxAlphabet) + ", got " +
                                              std::to_string(d));
    }
    return SolveMode(Kind::LD, d);
  }

  constexpr Kind kind() const noexcept { return kind_; }
  /// Gray-code alphabet: 2 for L1/MARG, d for LD.
  constexpr unsigned radix() const noexcept { return radix_; }
  constexpr bool is_signed() const noexcept { return kind_ != Kind::LD; }

  std::string name() const {
    switch (kind_) {
      case Kind::L1: return "l1";
      case Kind::Marg: return "marg";
      case Kind::LD: return "ld";
    }
    return "?";
  }
  /// Human label of the norm, e.g. "L1", "Lmarg", "L3".
  std::string label() const {
    switch (kind_) {
      case Kind::L1: return "L1";
      case Kind::Marg: return "Lmarg";
      case Kind::LD: return "L" + std::to_string(radix_);
    }
    return "?";
  }

  friend constexpr bool operator==(SolveMode, SolveMode) = default;

 private:
  constexpr SolveMode(Kind kind, unsigned radix) : kind_(kind), radix_(radix) {}
  Kind kind_;
  unsigned radix_;
};

enum class TransposePolicy { IfBeneficial, Never };

/// Largest digit count h with radix^h <= 2^budget_bits.
inline std::size_t max_free_digits(unsigned radix, unsigned budget_bits) noexcept {
  const u128 limit = static_cast<u128>(1) << budget_bits;
  u128 power = 1;
  std::size_t h = 0;
  while (power * radix <= limit) power *= radix, ++h;
  return h;
}

/// Verifies the enumeration for `mode` fits a machine word of `word_bits`
/// bits with two bits of headroom, i.e. radix^(free digits) <= 2^(word_bits-2).
/// In L1 mode the smaller dimension is enumerated when transposition is allowed.
inline void check_feasible(const IntMatrix& m, SolveMode mode, unsigned word_bits = 64,
                           TransposePolicy policy = TransposePolicy::IfBeneficial) {
  if (m.empty()) return;
  std::size_t lines = m.rows();
  if (mode.kind() == SolveMode::Kind::L1 && policy == TransposePolicy::IfBeneficial && m.cols() < lines) {
    lines = m.cols();
  }
  const std::size_t free_digits = lines - 1;
  const std::size_t max_free = max_free_digits(mode.radix(), word_bits - 2);
  if (free_digits > max_free) {
    throw Error(ErrorCode::TooManyRows, "enumerating " + std::to_string(lines) + " rows with alphabet " +
                                            std::to_string(mode.radix()) + " needs " + std::to_string(free_digits) +
                                            " free digits; at most " + std::to_string(max_free + 1) +
                                            " rows are admissible");
  }
}

}  // namespace lnorm
