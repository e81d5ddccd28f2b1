#include "ozg/fib.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ozg {

std::int64_t fib_value(int i) {
  if (i < 1 || i > kMaxFibIndex) {
    throw std::out_of_range("fib_value: index " + std::to_string(i) + " outside [1, " +
                            std::to_string(kMaxFibIndex) + "]");
  }
  return detail::kFib[static_cast<std::size_t>(i)];
}

int max_index_for(std::int64_t n) {
  if (n < 1) throw std::domain_error("max_index_for: n must be >= 1");
  if (n > kMaxValue) throw std::domain_error("max_index_for: n exceeds the 2^62 input guard");
  auto it = std::upper_bound(detail::kFib.begin() + 1, detail::kFib.end(), n);
  return static_cast<int>(it - detail::kFib.begin()) - 1;
}

std::vector<int> zeckendorf(std::int64_t n) {
  std::vector<int> idx;
  std::int64_t rest = n;
  if (rest < 1 || rest > kMaxValue) {
    throw std::domain_error("zeckendorf: n outside [1, 2^62]");
  }
  while (rest > 0) {
    const int i = max_index_for(rest);
    idx.push_back(i);
    rest -= detail::fib_unchecked(i);
  }
  std::reverse(idx.begin(), idx.end());
  return idx;
}

int z_count(std::int64_t n) { return static_cast<int>(zeckendorf(n).size()); }

FibTable::FibTable(std::int64_t max_n) {
  int top = max_index_for(max_n) + 2;
  top = std::min(top, kMaxFibIndex);
  values_.assign(detail::kFib.begin(), detail::kFib.begin() + top + 1);
}

}  // namespace ozg
