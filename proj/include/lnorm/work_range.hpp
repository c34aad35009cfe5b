#pragma once

#include <cstdint>

namespace lnorm {

/// Inclusive interval of Gray word indices owned by one worker. Empty when
/// last < first (possible when there are more workers than words).
struct WorkRange {
  std::uint64_t first = 0;
  std::int64_t last = -1;
  unsigned worker = 0;

  bool empty() const noexcept { return last < static_cast<std::int64_t>(first); }
  std::uint64_t size() const noexcept { return empty() ? 0 : static_cast<std::uint64_t>(last) - first + 1; }

  friend bool operator==(const WorkRange&, const WorkRange&) = default;
};

}  // namespace lnorm
