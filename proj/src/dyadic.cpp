#include "gvar/dyadic.hpp"

#include <cmath>
#include <limits>

namespace gvar {

namespace {

using i128 = __int128;

DyadicRational from_wide(i128 num, int exp) {
  while (exp > 0 && (num & 1) == 0) {
    num >>= 1;
    --exp;
  }
  while (exp > DyadicRational::kMaxExp) {
    if (num & 1) throw DyadicError("dyadic exponent exceeds 62");
    num >>= 1;
    --exp;
  }
  if (num > std::numeric_limits<std::int64_t>::max() || num < std::numeric_limits<std::int64_t>::min()) {
    throw DyadicError("dyadic numerator overflows 64 bits");
  }
  return {static_cast<std::int64_t>(num), exp};
}

}  // namespace

DyadicRational::DyadicRational(std::int64_t num, int exp) : num_(num), exp_(exp) {
  if (exp < 0 || exp > kMaxExp) throw DyadicError("dyadic exponent must be in [0, 62]");
  if (num_ == 0) exp_ = 0;
  while (exp_ > 0 && (num_ & 1) == 0) {
    num_ /= 2;
    --exp_;
  }
}

DyadicRational DyadicRational::from_double(double x) {
  if (!std::isfinite(x)) throw DyadicError("non-finite value is not dyadic");
  if (x == 0.0) return {};
  int e = 0;
  const double mant = std::frexp(x, &e);  // x = mant * 2^e, |mant| in [0.5, 1)
  auto num = static_cast<std::int64_t>(std::ldexp(mant, 53));
  int exp = 53 - e;
  while (exp > 0 && (num & 1) == 0) {
    num /= 2;
    --exp;
  }
  if (exp < 0) {
    if (exp < -10) throw DyadicError("value too large for a dyadic numerator");
    return from_wide(static_cast<i128>(num) << -exp, 0);
  }
  if (exp > kMaxExp) throw DyadicError("value " + std::to_string(x) + " needs a dyadic exponent above 62");
  return {num, exp};
}

double DyadicRational::to_double() const { return std::ldexp(static_cast<double>(num_), -exp_); }

std::int64_t DyadicRational::floor() const {
  if (exp_ == 0) return num_;
  return num_ >> exp_;  // arithmetic shift floors
}

DyadicRational DyadicRational::mod1() const {
  if (exp_ == 0) return {};
  const std::int64_t mask = (std::int64_t{1} << exp_) - 1;
  return {num_ & mask, exp_};
}

std::string DyadicRational::to_string() const {
  if (exp_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/2^" + std::to_string(exp_);
}

DyadicRational operator+(DyadicRational a, DyadicRational b) {
  const int e = std::max(a.exp_, b.exp_);
  return from_wide((static_cast<i128>(a.num_) << (e - a.exp_)) + (static_cast<i128>(b.num_) << (e - b.exp_)), e);
}

DyadicRational operator-(DyadicRational a, DyadicRational b) {
  const int e = std::max(a.exp_, b.exp_);
  return from_wide((static_cast<i128>(a.num_) << (e - a.exp_)) - (static_cast<i128>(b.num_) << (e - b.exp_)), e);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const int e = std::max(a.exp_, b.exp_);
  const i128 x = static_cast<i128>(a.num_) << (e - a.exp_);
  const i128 y = static_cast<i128>(b.num_) << (e - b.exp_);
  return x <=> y;
}

}  // namespace gvar
