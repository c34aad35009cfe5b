#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lnorm/error.hpp"

namespace lnorm::gray {

// Digit i is addressed least-significant first: digit 0 changes on every odd
// word index, digit h-1 changes once per period.

using Word = std::uint64_t;

/// Digit i of word j of the binary reflected Gray code,
/// floor((j + 2^i) / 2^(i+1)) mod 2. Requires i <= 62 and j + 2^i < 2^64.
constexpr unsigned brgc_digit(unsigned i, Word j) noexcept {
  return static_cast<unsigned>(((j + (Word{1} << i)) >> (i + 1)) & 1u);
}

/// Digit where word j differs from word j-1 (j >= 1): the exponent of 2 in j.
constexpr unsigned brgc_change_index(Word j) noexcept { return static_cast<unsigned>(std::countr_zero(j)); }

/// Powers radix^0 .. radix^h, computed once per solve.
class RadixPowers {
 public:
  RadixPowers(unsigned radix, std::size_t h) : radix_(radix), pow_(h + 1, 1) {
    for (std::size_t i = 1; i <= h; ++i) pow_[i] = pow_[i - 1] * radix;
  }

  unsigned radix() const noexcept { return radix_; }
  std::size_t digits() const noexcept { return pow_.size() - 1; }
  Word operator[](std::size_t i) const noexcept { return pow_[i]; }
  /// radix^h, the number of words.
  Word period() const noexcept { return pow_.back(); }

 private:
  unsigned radix_;
  std::vector<Word> pow_;
};

/// Element k of S = (0, 1, ..., d-1, d-1, ..., 1, 0).
constexpr unsigned reflected_symbol(unsigned d, Word k) noexcept {
  return static_cast<unsigned>(k < d ? k : 2 * Word{d} - 1 - k);
}

/// Digit i of word j of the d-ary reflected Gray code, S[floor(j / d^i) mod 2d].
inline unsigned dary_digit(const RadixPowers& pow, unsigned i, Word j) noexcept {
  const unsigned d = pow.radix();
  if (d == 2) return brgc_digit(i, j);
  return reflected_symbol(d, (j / pow[i]) % (2 * Word{d}));
}

inline unsigned dary_digit(unsigned d, unsigned i, Word j) noexcept {
  if (d == 2) return brgc_digit(i, j);
  Word p = 1;
  for (unsigned k = 0; k < i; ++k) p *= d;
  return reflected_symbol(d, (j / p) % (2 * Word{d}));
}

/// Digit where word j differs from word j-1 (j >= 1):
/// min{i : floor(j / d^i) mod d != 0}. `probes`, when given, is incremented
/// once per digit examined.
inline unsigned dary_change_index(unsigned d, Word j, std::uint64_t* probes = nullptr) noexcept {
  if (d == 2) {
    if (probes) *probes += brgc_change_index(j) + 1;
    return brgc_change_index(j);
  }
  unsigned i = 0;
  Word q = j;
  for (;;) {
    if (probes) ++*probes;
    if (q % d != 0) return i;
    q /= d;
    ++i;
  }
}

/// A word of the d-ary reflected Gray code with its digits materialised.
struct GrayWord {
  unsigned d = 2;
  std::size_t h = 0;
  Word j = 0;
  std::vector<unsigned> digits;

  friend bool operator==(const GrayWord&, const GrayWord&) = default;
};

inline GrayWord word_at(const RadixPowers& pow, Word j) {
  if (j >= pow.period()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "word " + std::to_string(j) + " outside [0, " + std::to_string(pow.period()) + ")");
  }
  GrayWord w{pow.radix(), pow.digits(), j, std::vector<unsigned>(pow.digits())};
  for (std::size_t i = 0; i < w.h; ++i) w.digits[i] = dary_digit(pow, static_cast<unsigned>(i), j);
  return w;
}

inline GrayWord word_at(unsigned d, std::size_t h, Word j) { return word_at(RadixPowers(d, h), j); }

/// Materialises the whole h-digit d-ary reflected Gray code by recursion:
/// the (k+1)-digit code is d copies of the k-digit code, alternately forward
/// and reversed, with the new top digit set to the copy number.
/// Intended for test-sized codes (d^h <= 3^12).
inline std::vector<std::vector<unsigned>> reflect_construct(unsigned d, std::size_t h) {
  constexpr Word kLimit = 531441;  // 3^12
  Word size = 1;
  for (std::size_t k = 0; k < h; ++k) {
    size *= d;
    if (size > kLimit) {
      throw Error(ErrorCode::SizeTooLarge, std::to_string(d) + "^" + std::to_string(h) + " words exceed 3^12");
    }
  }
  std::vector<std::vector<unsigned>> code{{}};
  for (std::size_t k = 0; k < h; ++k) {
    std::vector<std::vector<unsigned>> next;
    next.reserve(code.size() * d);
    for (unsigned top = 0; top < d; ++top) {
      for (std::size_t n = 0; n < code.size(); ++n) {
        auto word = code[top % 2 == 0 ? n : code.size() - 1 - n];
        word.push_back(top);
        next.push_back(std::move(word));
      }
    }
    code = std::move(next);
  }
  return code;
}

}  // namespace lnorm::gray
