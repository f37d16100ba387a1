#pragma once

namespace zerodist {

/// Compensated (Kahan-Babuska/Neumaier) running sum. Unlike plain Kahan it
/// also stays accurate when an addend is larger in magnitude than the sum.
/// The rounding error of each addition comes from Knuth's branch-free TwoSum.
template <typename Value>
struct CompensatedSum {
  Value sum = Value{0};
  Value compensation = Value{0};

  constexpr void add(Value value) noexcept {
    const Value t = sum + value;
    const Value v = t - sum;
    compensation += (sum - (t - v)) + (value - v);
    sum = t;
  }

  constexpr CompensatedSum& operator+=(Value value) noexcept {
    add(value);
    return *this;
  }

  constexpr Value value() const noexcept { return sum + compensation; }
};

}  // namespace zerodist
