#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hyperrank {

/// A computation was refused because its size exceeds a configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default cap on dense matrix entries (rows * cols) built in one go.
inline constexpr std::uint64_t kDefaultEntryBudget = std::uint64_t{1} << 25;

/// Throws BudgetExceeded when need > budget.
inline void require_budget(std::uint64_t need, std::uint64_t budget, const std::string& what) {
  if (need > budget) {
    throw BudgetExceeded(what + " needs " + std::to_string(need) + " entries, budget is " + std::to_string(budget));
  }
}

/// rows * cols, saturating at UINT64_MAX.
inline std::uint64_t saturating_product(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > ~std::uint64_t{0} / a) return ~std::uint64_t{0};
  return a * b;
}

}  // namespace hyperrank
