#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gvar {

class DyadicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// num / 2^exp with 0 <= exp <= 62, kept canonical (num odd or exp == 0).
/// Comparison is exact.
class DyadicRational {
 public:
  static constexpr int kMaxExp = 62;

  constexpr DyadicRational() = default;
  DyadicRational(std::int64_t num, int exp);
  static DyadicRational integer(std::int64_t n) { return {n, 0}; }
  /// Exact conversion; throws when x is not a dyadic with exponent <= 62 and a
  /// 64-bit numerator.
  static DyadicRational from_double(double x);

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] int exp() const { return exp_; }
  [[nodiscard]] double to_double() const;
  /// Representative in [0, 1).
  [[nodiscard]] DyadicRational mod1() const;
  [[nodiscard]] std::int64_t floor() const;
  [[nodiscard]] std::string to_string() const;

  friend DyadicRational operator+(DyadicRational a, DyadicRational b);
  friend DyadicRational operator-(DyadicRational a, DyadicRational b);
  friend DyadicRational operator-(DyadicRational a) { return {-a.num_, a.exp_}; }
  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

 private:
  std::int64_t num_ = 0;
  int exp_ = 0;
};

}  // namespace gvar
