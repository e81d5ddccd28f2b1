#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace ozg {

// Indexing used throughout: F_1 = 1, F_2 = 2, F_{i+1} = F_i + F_{i-1}.
// F_91 is the largest term representable in a signed 64-bit integer.
inline constexpr int kMaxFibIndex = 91;

// Inputs above 2^62 are rejected outright rather than risking overflow in
// derived quantities.
inline constexpr std::int64_t kMaxValue = std::int64_t{1} << 62;

namespace detail {
inline constexpr std::array<std::int64_t, kMaxFibIndex + 1> kFib = [] {
  std::array<std::int64_t, kMaxFibIndex + 1> t{};
  t[1] = 1;
  t[2] = 2;
  for (int i = 3; i <= kMaxFibIndex; ++i) t[i] = t[i - 1] + t[i - 2];
  return t;
}();

// Unchecked table access for hot loops; index must already be in [1, 91].
constexpr std::int64_t fib_unchecked(int i) { return kFib[static_cast<std::size_t>(i)]; }
}  // namespace detail

// F_i. Throws std::out_of_range unless 1 <= i <= kMaxFibIndex.
std::int64_t fib_value(int i);

// Largest index l with F_l <= n. Throws std::domain_error for n < 1 or n > kMaxValue.
int max_index_for(std::int64_t n);

// Zeckendorf decomposition as strictly increasing indices with gaps >= 2.
// The represented values sum to n.
std::vector<int> zeckendorf(std::int64_t n);

// Number of Zeckendorf summands of n.
int z_count(std::int64_t n);

// Dense prefix of the Fibonacci table sized for states of total value <= max_n.
// Rebuilding this per run keeps lookups branch-free in simulation loops.
class FibTable {
 public:
  explicit FibTable(std::int64_t max_n);

  std::int64_t value(int i) const { return values_[static_cast<std::size_t>(i)]; }
  int max_index() const { return static_cast<int>(values_.size()) - 1; }
  std::span<const std::int64_t> values() const { return values_; }

 private:
  std::vector<std::int64_t> values_;  // values_[0] is an unused sentinel
};

}  // namespace ozg
