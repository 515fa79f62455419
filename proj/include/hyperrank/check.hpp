#pragma once

// Named pass/fail records shared by every report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperrank {

struct Check {
  std::string name;
  std::string relation;  // "<=", "<", "==", or "holds"
  std::optional<std::uint64_t> lhs;
  std::optional<std::uint64_t> rhs;
  bool pass = false;
  std::string detail;
};

inline Check check_le(std::string name, std::uint64_t lhs, std::uint64_t rhs) {
  return {std::move(name), "<=", lhs, rhs, lhs <= rhs, {}};
}
inline Check check_lt(std::string name, std::uint64_t lhs, std::uint64_t rhs) {
  return {std::move(name), "<", lhs, rhs, lhs < rhs, {}};
}
inline Check check_eq(std::string name, std::uint64_t lhs, std::uint64_t rhs) {
  return {std::move(name), "==", lhs, rhs, lhs == rhs, {}};
}
inline Check check_holds(std::string name, bool pass, std::string detail = {}) {
  return {std::move(name), "holds", std::nullopt, std::nullopt, pass, std::move(detail)};
}

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace hyperrank
