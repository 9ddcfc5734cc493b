#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "grpdb/error.hpp"

namespace grpdb {

/// Wall-clock budget for one pipeline stage. A default-constructed deadline never expires.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(std::chrono::milliseconds budget) : end_(Clock::now() + budget) {}

  bool expired() const { return end_ && Clock::now() >= *end_; }

  void check(const char* stage) const {
    if (expired()) throw BudgetExceeded(std::string(stage) + ": wall-clock budget exceeded");
  }

 private:
  std::optional<Clock::time_point> end_;
};

}  // namespace grpdb
