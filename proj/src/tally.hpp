#pragma once

#include <cstdint>
#include <string>

#include "hyperrank/check.hpp"

namespace hyperrank::detail {

// Accumulates many cases of one property into a single check.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  template <class Describe>
  bool record(bool ok, Describe&& describe) {
    ++cases_;
    if (!ok) {
      if (failures_++ == 0) first_ = describe();
    }
    return ok;
  }
  bool record(bool ok) {
    return record(ok, [] { return std::string(); });
  }

  void skip(std::string why) { skipped_ = std::move(why); }
  std::uint64_t cases() const { return cases_; }

  Check done() const {
    std::string detail = std::to_string(cases_) + " cases";
    if (failures_ != 0) detail += ", " + std::to_string(failures_) + " failures, first: " + first_;
    if (!skipped_.empty()) detail += cases_ == 0 ? "; skipped: " + skipped_ : "; " + skipped_;
    return check_holds(name_, failures_ == 0, detail);
  }

 private:
  std::string name_;
  std::uint64_t cases_ = 0;
  std::uint64_t failures_ = 0;
  std::string first_;
  std::string skipped_;
};

}  // namespace hyperrank::detail
